#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../oracles.hpp"
#include "../test_helpers.hpp"
#include "pathprob/random.hpp"
#include "pathprob/spectral.hpp"

using namespace pathprob;
using testing::kind_of;
using oracle::kPi;

namespace {

SpectralMeasure triple_counterexample() {
  // Genuine three-path term: cos(Φ₁ + Φ₂ − 2Φ₃) on top of the quantum measure.
  auto m = quantum_spectrum(3, 1.0);
  m.atoms.push_back({1.0, {1.0, 1.0, -2.0}});
  return m;
}

}  // namespace

TEST_CASE("quantum_spectrum reproduces the amplitude rule") {
  CHECK(quantum_spectrum(1, 2.0).atoms.size() == 1);
  CHECK(eval_spectral(quantum_spectrum(1, 2.0), std::vector<double>{3.0}) == 1.0);
  CHECK(quantum_spectrum(5, 1.0).atoms.size() == 11);

  Rng rng(21);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 16));
    const double kappa = rng.uniform(0.1, 7);
    const auto phis = rng.uniform_vector(n, -100, 100);
    worst = std::max(worst, oracle::relative_error(eval_spectral(quantum_spectrum(n, kappa), phis),
                                                   oracle::complex_sum_intensity(phis, kappa)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("validation errors") {
  SpectralMeasure bad{2, {{1.0, {1.0, 1.0}}}};
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::HyperplaneViolation);
  SpectralMeasure wrong_len{3, {{1.0, {1.0, -1.0}}}};
  CHECK(kind_of([&] { validate(wrong_len); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { eval_spectral(quantum_spectrum(3, 1.0), std::vector<double>{0, 1}); }) ==
        ErrorKind::DimensionMismatch);
  // Rounding-sized violations on large frequencies are tolerated.
  SpectralMeasure near{2, {{1.0, {1e6, -1e6 + 1e-7}}}};
  CHECK_NOTHROW(validate(near));
  CHECK(kind_of([] { symmetrize(quantum_spectrum(8, 1.0)); }) == ErrorKind::TooLarge);
}

TEST_CASE("symmetrize") {
  const SpectralMeasure lopsided{3, {{1.0, {2.0, -1.0, -1.0}}}};
  const auto sym = symmetrize(lopsided);
  CHECK(sym.atoms.size() == 6);
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto phis = rng.uniform_vector(3, -5, 5);
    const double expected =
        (2 * std::cos(2 * phis[0] - phis[1] - phis[2]) + 2 * std::cos(2 * phis[1] - phis[0] - phis[2]) +
         2 * std::cos(2 * phis[2] - phis[0] - phis[1])) /
        6.0;
    CHECK(std::abs(eval_spectral(sym, phis) - expected) < 1e-13);
    // Symmetrized measures are permutation-invariant.
    const auto sigma = rng.permutation(3);
    std::vector<double> permuted(3);
    for (std::size_t i = 0; i < 3; ++i) permuted[i] = phis[sigma[i]];
    CHECK(std::abs(eval_spectral(sym, permuted) - eval_spectral(sym, phis)) < 1e-13);
  }
  // The quantum measure is already symmetric.
  const auto q = quantum_spectrum(4, 1.3);
  const auto phis = std::vector<double>{0.1, 2.0, -0.7, 5.5};
  CHECK(std::abs(eval_spectral(symmetrize(q), phis) - eval_spectral(q, phis)) < 1e-12);
}

TEST_CASE("generalized axioms") {
  SUBCASE("quantum measure passes everything") {
    const auto r = check_generalized_axioms(quantum_spectrum(4, 1.0));
    CHECK(r.time_symmetry);
    CHECK(r.shift_invariance);
    CHECK(r.pairwise_additivity);
    CHECK(r.permutation_symmetry);
    CHECK(r.reports.size() == 4);
  }
  SUBCASE("triple counterexample fails pairwise additivity only") {
    const auto r = check_generalized_axioms(triple_counterexample());
    CHECK(r.time_symmetry);
    CHECK(r.shift_invariance);
    CHECK_FALSE(r.pairwise_additivity);
    CHECK(r.reports[2].max_abs_residual > 0.1);
    // cos(Φ₁ + Φ₂ − 2Φ₃) is symmetric only under swapping the first two.
    CHECK_FALSE(r.permutation_symmetry);
  }
  SUBCASE("constant theory") {
    const SpectralMeasure constant{4, {{16.0, {0, 0, 0, 0}}}};
    GeneralizedAxiomOptions opts;
    opts.pair_kappa = 0.0;
    const auto r = check_generalized_axioms(constant, opts);
    CHECK(r.pairwise_additivity);
    CHECK(r.time_symmetry);
    CHECK(r.shift_invariance);
  }
  SUBCASE("explicit pair measure") {
    GeneralizedAxiomOptions opts;
    opts.pair_measure = quantum_spectrum(2, 2.0);
    CHECK(check_generalized_axioms(quantum_spectrum(5, 2.0), opts).pairwise_additivity);
    CHECK_FALSE(check_generalized_axioms(quantum_spectrum(5, 1.0), opts).pairwise_additivity);
  }
  SUBCASE("pairwise is vacuous below three paths") {
    const auto r = check_generalized_axioms(quantum_spectrum(2, 1.0));
    CHECK(r.pairwise_additivity);
    CHECK(r.reports[2].trials == 0);
  }
}

TEST_CASE("product_measure composes") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 4));
    const auto m = static_cast<std::size_t>(rng.integer(1, 4));
    const double kappa = rng.uniform(0.2, 3);
    const auto a = quantum_spectrum(n, kappa);
    const auto b = quantum_spectrum(m, kappa);
    const auto c = product_measure(a, b);
    CHECK_NOTHROW(validate(c));
    const auto phi = rng.uniform_vector(n, -10, 10);
    const auto psi = rng.uniform_vector(m, -10, 10);
    const auto composite = compose_invariants(phi, psi);
    const double expected = eval_spectral(a, phi) * eval_spectral(b, psi);
    CHECK(oracle::relative_error(eval_spectral(c, composite), expected) < 1e-10);
    // The composite quantum intensity is the same number.
    CHECK(oracle::relative_error(oracle::complex_sum_intensity(composite, kappa), expected) < 1e-10);
  }
}

TEST_CASE("property: random symmetric measures are time- and shift-invariant") {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 5));
    SpectralMeasure m{n, {}};
    for (int a = 0; a < 4; ++a) {
      auto alpha = rng.uniform_vector(n, -3, 3);
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) s += alpha[i];
      alpha[n - 1] = -s;
      m.atoms.push_back({rng.uniform(-2, 2), alpha});
    }
    GeneralizedAxiomOptions opts;
    opts.trials = 50;
    opts.seed = static_cast<std::uint64_t>(trial);
    const auto r = check_generalized_axioms(m, opts);
    CHECK(r.time_symmetry);
    CHECK(r.shift_invariance);
  }
}
