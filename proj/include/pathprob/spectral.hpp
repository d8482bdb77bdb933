#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pathprob/axioms.hpp"
#include "pathprob/probability.hpp"

namespace pathprob {

/// One atom of a discrete spectral measure: weight · cos(Σ_i alpha_i Φ_i).
struct SpectralAtom {
  double weight = 0.0;
  std::vector<double> alpha;
};

/// Finite cosine representation of a time-symmetric, shift-invariant P^n.
/// Every frequency vector lies on the zero-sum hyperplane Σ_i alpha_i = 0.
struct SpectralMeasure {
  std::size_t n = 0;
  std::vector<SpectralAtom> atoms;
};

inline constexpr double kHyperplaneTolerance = 1e-12;

/// Throws DimensionMismatch for atoms of the wrong length and
/// HyperplaneViolation when |Σ alpha| > 1e-12 · max(1, Σ|alpha|).
void validate(const SpectralMeasure& m);

/// Σ_atoms w · cos(Σ_i alpha_i Φ_i). Validates the measure first.
double eval_spectral(const SpectralMeasure& m, std::span<const double> phis);

/// Atom (n, 0) plus (2, κ(e_i − e_j)) for every i < j; reproduces the
/// amplitude rule. n = 1 gives the single atom (1, (0)).
SpectralMeasure quantum_spectrum(std::size_t n, double kappa);

inline constexpr std::size_t kMaxSymmetrizeArity = 7;

/// Averages every atom over all n! orderings of its frequency vector (no
/// merging of coincident atoms). Throws TooLarge for n > 7.
SpectralMeasure symmetrize(const SpectralMeasure& m);

/// Measure C on n·m arguments with C({Φ_i + Ψ_j}) = A(Φ)·B(Ψ) on composite
/// arguments, built from cos a·cos b = ½[cos(a + b) + cos(a − b)] and the
/// frequency split γ_ij = α_i/m + β_j/n.
SpectralMeasure product_measure(const SpectralMeasure& a, const SpectralMeasure& b);

struct GeneralizedAxiomOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  double phi_range = 10.0;
  double epsilon = 0.25;
  double tolerance = 1e-10;
  // Lower-order members of the family used by the pairwise check. P¹ is the
  // constant 1; P² defaults to the two-path quantum measure at this κ.
  double pair_kappa = 1.0;
  std::optional<SpectralMeasure> pair_measure;
};

struct GeneralizedAxiomResult {
  std::vector<AxiomReport> reports;  // time, shift, pairwise, permutation
  bool time_symmetry = false;
  bool shift_invariance = false;
  bool pairwise_additivity = false;
  bool permutation_symmetry = false;
};

/// Family with P^{m.n} from the measure, P² from the pair measure and P¹ ≡ 1.
ProbabilityFamily spectral_family(const SpectralMeasure& m, const GeneralizedAxiomOptions& options);

/// Runs the time-symmetry, shift-invariance, pairwise-additivity and
/// permutation checks against eval_spectral on seeded random inputs.
GeneralizedAxiomResult check_generalized_axioms(const SpectralMeasure& m,
                                                const GeneralizedAxiomOptions& options = {});

}  // namespace pathprob
