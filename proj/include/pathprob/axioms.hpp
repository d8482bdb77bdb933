#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pathprob/invariants.hpp"
#include "pathprob/probability.hpp"

namespace pathprob {

enum class Axiom {
  PairwiseAdditivity,
  TimeSymmetry,
  BayesComposition,
  PermutationSymmetry,
  ShiftInvariance,
};

std::string_view to_string(Axiom axiom);

/// |lhs − rhs| alongside the same difference scaled by max(1, |lhs|, |rhs|).
/// P^n grows like n², so the relative figure is the one gated on.
struct Residual {
  double abs = 0.0;
  double rel = 0.0;
};

Residual make_residual(double lhs, double rhs);

// Residual evaluators. Each comes in two flavours: against an arbitrary
// probability family, and against the amplitude rule at v.kappa.

/// P^n vs Σ_{i<j} P²(Φ_i, Φ_j) − (n − 2)·Σ_i P¹(Φ_i). Throws TooFewPaths for n < 3.
Residual check_pairwise_additivity(const ProbabilityFamily& family, std::span<const double> phis);
Residual check_pairwise_additivity(const InvariantVector& v);

/// P^n({Φ_i}) vs P^n({−Φ_i}).
Residual check_time_symmetry(const ProbabilityFamily& family, std::span<const double> phis);
Residual check_time_symmetry(const InvariantVector& v);

/// Builds {Φ_i + Ψ_j} (row-major, i outer) and compares P^{nm} of it with
/// P^n(Φ)·P^m(Ψ).
std::vector<double> compose_invariants(std::span<const double> first, std::span<const double> second);
Residual check_bayes_composition(const ProbabilityFamily& family, std::span<const double> first,
                                 std::span<const double> second);
/// Throws KappaMismatch when the two vectors disagree on κ.
Residual check_bayes_composition(const InvariantVector& first, const InvariantVector& second);

/// P^n(Φ) vs P^n(Φ∘σ) for a permutation σ of {0, …, n−1}.
Residual check_permutation_symmetry(const ProbabilityFamily& family, std::span<const double> phis,
                                    std::span<const std::size_t> permutation);
Residual check_permutation_symmetry(const InvariantVector& v, std::span<const std::size_t> permutation);

/// Finite-difference directional derivative |P^n(Φ + ε) − P^n(Φ)| / ε. `rel`
/// scales it by max(1, |P^n(Φ)|, |P^n(Φ + ε)|). Throws ZeroEpsilon.
Residual check_shift_invariance(const ProbabilityFamily& family, std::span<const double> phis,
                                double epsilon);
Residual check_shift_invariance(const InvariantVector& v, double epsilon);

/// I_k = Σ_{∅≠T⊆{1..k}} (−1)^{k−|T|} P^{|T|}(Φ|_T) by full subset enumeration.
/// Throws SizeMismatch unless phis has exactly `order` entries and order >= 2.
double sorkin_interference(const ProbabilityFamily& family, int order, std::span<const double> phis);
double sorkin_interference(int order, const InvariantVector& v);

/// Largest |P^{|T|}| met while enumerating subsets; the natural scale for I_k.
double sorkin_scale(const ProbabilityFamily& family, std::span<const double> phis);

/// D(x+y) + D(x−y) + 2D(x) + 2D(y) − 8 against D(x)·D(y) (terms regrouped so
/// y = 0 is an exact identity).
Residual functional_equation_residual(const PairKernel& kernel, double x, double y);

enum class BranchTag {
  Cosine,
  Hyperbolic,
  Constant,    // D ≡ 4, the κ → 0 limit of the cosine branch
  Degenerate,  // D ≡ 2, i.e. G ≡ 0
};

std::string_view to_string(BranchTag tag);

struct BranchFit {
  BranchTag branch = BranchTag::Constant;
  double rate = 0.0;           // κ or λ; 0 on the flat branches
  double max_deviation = 0.0;  // max |D_i − model_i| / max(1, |D_i|)
  bool bounded = true;
};

struct BranchClassifierOptions {
  double tolerance = 1e-6;
  std::size_t min_samples = 8;
};

/// Classifies samples (x, D(x)) as constant, cosine or hyperbolic and fits the
/// rate. Boundedness decides the branch: any value above 4 + tolerance is
/// hyperbolic. Throws InsufficientSamples (too few points or no x = 0) and
/// AmbiguousData (no branch reproduces the data within tolerance).
BranchFit classify_branch(std::span<const std::pair<double, double>> samples,
                          const BranchClassifierOptions& options = {});

struct AxiomReport {
  Axiom axiom = Axiom::PairwiseAdditivity;
  std::size_t trials = 0;
  double max_abs_residual = 0.0;
  double max_rel_residual = 0.0;
  std::uint64_t seed = 0;
  // Input(s) of the trial with the largest relative residual. Bayes keeps
  // (first, second); permutation keeps (original, permuted).
  std::vector<InvariantVector> worst_case_input;

  void record(const Residual& r, std::vector<InvariantVector> input);
};

struct SorkinReport {
  int order = 2;
  std::vector<double> interference_values;
  double max_abs = 0.0;
  // Against the expected value: D(Φ₁ − Φ₂) − 2 for k = 2, zero for k >= 3,
  // scaled by the largest sub-probability for the relative figure.
  double max_abs_deviation = 0.0;
  double max_rel_deviation = 0.0;
};

struct AxiomSuiteConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  KernelBranch branch = KernelBranch::Cosine;
  std::vector<double> rates{0.1, 1.0, 7.0};
  std::size_t min_paths = 3;
  std::size_t max_paths = 64;
  std::size_t max_composite = 64;
  double phi_range = 100.0;
  double epsilon = 0.25;
  std::vector<int> sorkin_orders{2, 3, 4, 5};
  double tolerance = 1e-10;
};

/// Seeded randomized trials of one axiom against the configured kernel family.
AxiomReport run_axiom_trials(Axiom axiom, const AxiomSuiteConfig& config);
SorkinReport run_sorkin_trials(int order, const AxiomSuiteConfig& config);

struct AxiomSuiteResult {
  std::vector<AxiomReport> reports;
  std::vector<SorkinReport> sorkin;
  BranchFit kernel_branch;
  bool passed = false;
};

/// All five axioms, Sorkin orders from the config, and a branch
/// classification of the configured kernel.
AxiomSuiteResult run_axiom_suite(const AxiomSuiteConfig& config);

}  // namespace pathprob
