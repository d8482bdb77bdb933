#include "pathprob/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pathprob/error.hpp"
#include "pathprob/random.hpp"

namespace pathprob {

void validate(const SpectralMeasure& m) {
  for (std::size_t k = 0; k < m.atoms.size(); ++k) {
    const auto& alpha = m.atoms[k].alpha;
    if (alpha.size() != m.n) {
      throw Error(ErrorKind::DimensionMismatch, "atom " + std::to_string(k) + " has " +
                                                    std::to_string(alpha.size()) +
                                                    " coefficients, expected " + std::to_string(m.n));
    }
    double sum = 0.0;
    double magnitude = 0.0;
    for (double a : alpha) {
      sum += a;
      magnitude += std::abs(a);
    }
    if (std::abs(sum) > kHyperplaneTolerance * std::max(1.0, magnitude)) {
      throw Error(ErrorKind::HyperplaneViolation,
                  "atom " + std::to_string(k) + " has frequency sum " + std::to_string(sum));
    }
  }
}

double eval_spectral(const SpectralMeasure& m, std::span<const double> phis) {
  if (phis.size() != m.n) {
    throw Error(ErrorKind::DimensionMismatch, "measure takes " + std::to_string(m.n) +
                                                  " arguments, got " + std::to_string(phis.size()));
  }
  validate(m);
  double total = 0.0;
  for (const auto& atom : m.atoms) {
    double phase = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) phase += atom.alpha[i] * phis[i];
    total += atom.weight * std::cos(phase);
  }
  return total;
}

SpectralMeasure quantum_spectrum(std::size_t n, double kappa) {
  SpectralMeasure m;
  m.n = n;
  m.atoms.push_back({static_cast<double>(n), std::vector<double>(n, 0.0)});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<double> alpha(n, 0.0);
      alpha[i] = kappa;
      alpha[j] = -kappa;
      m.atoms.push_back({2.0, std::move(alpha)});
    }
  }
  return m;
}

SpectralMeasure symmetrize(const SpectralMeasure& m) {
  if (m.n > kMaxSymmetrizeArity) {
    throw Error(ErrorKind::TooLarge, "symmetrization limited to n <= " +
                                         std::to_string(kMaxSymmetrizeArity));
  }
  validate(m);
  std::vector<std::size_t> sigma(m.n);
  std::iota(sigma.begin(), sigma.end(), 0);
  double orbit = 1.0;
  for (std::size_t k = 2; k <= m.n; ++k) orbit *= static_cast<double>(k);

  SpectralMeasure out;
  out.n = m.n;
  for (const auto& atom : m.atoms) {
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      std::vector<double> alpha(m.n);
      for (std::size_t i = 0; i < m.n; ++i) alpha[i] = atom.alpha[sigma[i]];
      out.atoms.push_back({atom.weight / orbit, std::move(alpha)});
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  return out;
}

SpectralMeasure product_measure(const SpectralMeasure& a, const SpectralMeasure& b) {
  validate(a);
  validate(b);
  SpectralMeasure out;
  out.n = a.n * b.n;
  const double na = static_cast<double>(a.n);
  const double nb = static_cast<double>(b.n);
  for (const auto& x : a.atoms) {
    for (const auto& y : b.atoms) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> gamma;
        gamma.reserve(out.n);
        for (std::size_t i = 0; i < a.n; ++i) {
          for (std::size_t j = 0; j < b.n; ++j) {
            gamma.push_back(x.alpha[i] / nb + sign * y.alpha[j] / na);
          }
        }
        out.atoms.push_back({0.5 * x.weight * y.weight, std::move(gamma)});
      }
    }
  }
  return out;
}

ProbabilityFamily spectral_family(const SpectralMeasure& m, const GeneralizedAxiomOptions& options) {
  validate(m);
  SpectralMeasure pair = options.pair_measure.value_or(quantum_spectrum(2, options.pair_kappa));
  if (pair.n != 2) throw Error(ErrorKind::DimensionMismatch, "pair measure must take 2 arguments");
  validate(pair);
  return [m, pair = std::move(pair)](std::span<const double> phis) -> double {
    if (phis.size() == m.n) return eval_spectral(m, phis);
    if (phis.size() == 2) return eval_spectral(pair, phis);
    if (phis.size() == 1) return 1.0;
    throw Error(ErrorKind::DimensionMismatch,
                "family defines P^n only for n in {1, 2, " + std::to_string(m.n) + "}");
  };
}

GeneralizedAxiomResult check_generalized_axioms(const SpectralMeasure& m,
                                                const GeneralizedAxiomOptions& options) {
  const auto family = spectral_family(m, options);
  Rng rng(options.seed);
  GeneralizedAxiomResult result;
  auto empty_report = [&](Axiom axiom) {
    AxiomReport r;
    r.axiom = axiom;
    r.seed = options.seed;
    return r;
  };
  AxiomReport time = empty_report(Axiom::TimeSymmetry);
  AxiomReport shift = empty_report(Axiom::ShiftInvariance);
  AxiomReport pairwise = empty_report(Axiom::PairwiseAdditivity);
  AxiomReport permutation = empty_report(Axiom::PermutationSymmetry);

  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    InvariantVector v{rng.uniform_vector(m.n, -options.phi_range, options.phi_range),
                      options.pair_kappa};
    time.record(check_time_symmetry(family, v.phis), {v});
    shift.record(check_shift_invariance(family, v.phis, options.epsilon), {v});
    // Pairwise additivity is an identity for n <= 2.
    if (m.n >= 3) pairwise.record(check_pairwise_additivity(family, v.phis), {v});
    const auto sigma = rng.permutation(m.n);
    InvariantVector permuted{std::vector<double>(m.n), v.kappa};
    for (std::size_t i = 0; i < m.n; ++i) permuted.phis[i] = v.phis[sigma[i]];
    permutation.record(check_permutation_symmetry(family, v.phis, sigma), {v, permuted});
  }
  const double tol = options.tolerance;
  result.time_symmetry = time.max_rel_residual < tol;
  result.shift_invariance = shift.max_rel_residual < tol;
  result.pairwise_additivity = pairwise.max_rel_residual < tol;
  result.permutation_symmetry = permutation.max_rel_residual < tol;
  result.reports = {time, shift, pairwise, permutation};
  return result;
}

}  // namespace pathprob
