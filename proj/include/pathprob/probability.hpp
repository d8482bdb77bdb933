#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pathprob/invariants.hpp"

namespace pathprob {

enum class KernelBranch { Cosine, Hyperbolic, Constant };

/// The even pair kernel D with P²(Φ₁, Φ₂) = D(Φ₁ − Φ₂), written as
/// D = 2G + 2 for a d'Alembert solution G. `rate` is κ on the cosine branch
/// and λ on the hyperbolic branch; the constant branch (G ≡ 1) ignores it.
struct PairKernel {
  KernelBranch branch = KernelBranch::Cosine;
  double rate = 1.0;
};

double kernel_eval(const PairKernel& kernel, double x);

/// P¹(Φ) = exp(growth_rate · Φ). Time symmetry forces growth_rate = 0.
struct OneArgSolution {
  double growth_rate = 0.0;

  double operator()(double phi) const;
  bool time_symmetric() const noexcept { return growth_rate == 0.0; }
};

/// |Σ exp(iκΦ_i)|² evaluated as (Σcos)² + (Σsin)². Throws EmptyVector.
double pn_amplitude(const InvariantVector& v);
double pn_amplitude(std::span<const double> phis, double kappa);

/// Σ_{i<j} [2cos(κ(Φ_i − Φ_j)) + 2] − n(n − 2). Throws TooFewPaths for n < 2.
double pn_pairwise(const InvariantVector& v);

/// P^n built from a pair kernel through the pairwise decomposition, in closed
/// form: cosine gives the amplitude rule, hyperbolic gives
/// (Σ e^{λΦ_i})(Σ e^{−λΦ_i}), constant gives n².
double pn_kernel(const PairKernel& kernel, std::span<const double> phis);

/// A probability family: maps any argument list {Φ_i} to P^n.
using ProbabilityFamily = std::function<double(std::span<const double>)>;

ProbabilityFamily quantum_family(double kappa);
ProbabilityFamily kernel_family(const PairKernel& kernel);

/// Atomic events with pairwise overlaps; every triple-or-higher intersection
/// is implicitly empty. Values are signed and unnormalized.
struct EventSystem {
  std::size_t n = 0;
  std::vector<double> singles;
  // Row-major upper triangle: (0,1), (0,2), …, (0,n−1), (1,2), …
  std::vector<double> pairs;

  double pair(std::size_t i, std::size_t j) const;
};

/// Throws SizeMismatch unless singles has n entries and pairs n(n−1)/2.
void validate(const EventSystem& ev);

struct UnionProbability {
  double from_intersections;  // Σ P(A_i) − Σ P(A_i ∩ A_j)
  double from_unions;         // Σ P(A_i ∪ A_j) − (n − 2)·Σ P(A_i)
};

UnionProbability union_probability(const EventSystem& ev);

/// Singles P¹ = 1, overlaps 2 − D(Φ_i − Φ_j). Throws TooFewPaths for n < 2.
EventSystem quantum_event_system(const InvariantVector& v);

}  // namespace pathprob
