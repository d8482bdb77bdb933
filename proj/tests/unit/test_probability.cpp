#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../oracles.hpp"
#include "../test_helpers.hpp"
#include "pathprob/error.hpp"
#include "pathprob/probability.hpp"
#include "pathprob/random.hpp"

using namespace pathprob;
using testing::kind_of;
using oracle::kPi;

TEST_CASE("kernel_eval branches") {
  CHECK(kernel_eval({KernelBranch::Cosine, 1.0}, 0.0) == 4.0);
  CHECK(std::abs(kernel_eval({KernelBranch::Cosine, 1.0}, kPi)) < 1e-15);
  const double e = std::exp(1.0);
  CHECK(kernel_eval({KernelBranch::Hyperbolic, 1.0}, 1.0) == doctest::Approx(e + 1.0 / e + 2.0).epsilon(1e-15));
  CHECK(kernel_eval({KernelBranch::Constant, 123.0}, 9.0) == 4.0);

  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(-20, 20);
    for (auto b : {KernelBranch::Cosine, KernelBranch::Hyperbolic, KernelBranch::Constant}) {
      const PairKernel k{b, 0.7};
      CHECK(kernel_eval(k, x) == kernel_eval(k, -x));
      CHECK(kernel_eval(k, 0.0) == 4.0);
    }
  }
}

TEST_CASE("one-argument solution") {
  const OneArgSolution symmetric{};
  CHECK(symmetric.time_symmetric());
  CHECK(symmetric(12.5) == 1.0);
  const OneArgSolution growing{0.3};
  CHECK_FALSE(growing.time_symmetric());
  // Cauchy's multiplicative equation, and its failure of time symmetry.
  CHECK(growing(1.2 + 0.7) == doctest::Approx(growing(1.2) * growing(0.7)).epsilon(1e-14));
  CHECK(growing(1.0) != doctest::Approx(growing(-1.0)));
}

TEST_CASE("pn_amplitude examples") {
  CHECK(pn_amplitude({{2.7}, 5.0}) == 1.0);
  for (std::size_t n : {2u, 5u, 17u}) {
    CHECK(pn_amplitude({std::vector<double>(n, 1.234), 3.3}) ==
          doctest::Approx(static_cast<double>(n * n)).epsilon(1e-14));
  }
  const std::vector<double> roots{0.0, 2 * kPi / 3, 4 * kPi / 3};
  const double expected = oracle::complex_sum_intensity(roots, 1.0);
  CHECK(expected < 1e-30);
  CHECK(std::abs(pn_amplitude({roots, 1.0}) - expected) < 1e-15);
  CHECK(kind_of([] { pn_amplitude({{}, 1.0}); }) == ErrorKind::EmptyVector);
}

TEST_CASE("pn_pairwise examples and equivalence") {
  CHECK(std::abs(pn_pairwise({{0.0, kPi}, 1.0})) < 1e-15);
  CHECK(pn_pairwise({{0.0, 0.0, 0.0}, 1.0}) == 9.0);
  CHECK(kind_of([] { pn_pairwise({{1.0}, 1.0}); }) == ErrorKind::TooFewPaths);

  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 64));
    const double kappa = std::vector<double>{0.1, 1.0, 7.0}[trial % 3];
    const InvariantVector v{rng.uniform_vector(n, -100, 100), kappa};
    worst = std::max(worst, oracle::relative_error(pn_pairwise(v), pn_amplitude(v)));
    CHECK(oracle::relative_error(pn_amplitude(v), oracle::complex_sum_intensity(v.phis, kappa)) < 1e-12);
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("property: symmetries and bounds of pn_amplitude") {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 40));
    const double kappa = rng.uniform(-5, 5);
    const InvariantVector v{rng.uniform_vector(n, -50, 50), kappa};
    const double p = pn_amplitude(v);
    const double nn = static_cast<double>(n * n);
    CHECK(p >= 0.0);
    CHECK(p <= nn * (1 + 1e-14));

    InvariantVector reversed = v;
    for (auto& phi : reversed.phis) phi = -phi;
    CHECK(pn_amplitude(reversed) == p);

    InvariantVector shifted = v;
    const double c = rng.uniform(-10, 10);
    for (auto& phi : shifted.phis) phi += c;
    CHECK(oracle::relative_error(pn_amplitude(shifted), p) < 1e-11);

    InvariantVector permuted = v;
    const auto sigma = rng.permutation(n);
    for (std::size_t i = 0; i < n; ++i) permuted.phis[i] = v.phis[sigma[i]];
    CHECK(oracle::relative_error(pn_amplitude(permuted), p) < 1e-12);

    InvariantVector scaled{v.phis, 1.0};
    for (auto& phi : scaled.phis) phi *= kappa;
    CHECK(pn_amplitude(scaled) == p);
  }
}

TEST_CASE("union_probability") {
  SUBCASE("two events") {
    const auto u = union_probability({2, {0.5, 0.5}, {0.25}});
    CHECK(u.from_intersections == 0.75);
    CHECK(u.from_unions == 0.75);
  }
  SUBCASE("disjoint events") {
    const auto u = union_probability({3, {1, 1, 1}, {0, 0, 0}});
    CHECK(u.from_intersections == 3.0);
    CHECK(u.from_unions == 3.0);
  }
  SUBCASE("random systems agree with the Venn-region oracle") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      EventSystem ev{5, rng.uniform_vector(5, -1, 2), rng.uniform_vector(10, -1, 1)};
      const auto u = union_probability(ev);
      const double venn = oracle::venn_union(ev.singles, [&](std::size_t i, std::size_t j) { return ev.pair(i, j); });
      CHECK(std::abs(u.from_intersections - u.from_unions) < 1e-12);
      CHECK(std::abs(u.from_intersections - venn) < 1e-12);
    }
  }
  SUBCASE("shape errors") {
    CHECK(kind_of([] { union_probability({3, {1, 1, 1}, {0, 0}}); }) == ErrorKind::SizeMismatch);
    CHECK(kind_of([] { union_probability({2, {1}, {0}}); }) == ErrorKind::SizeMismatch);
  }
}

TEST_CASE("quantum_event_system") {
  SUBCASE("destructive pair") {
    const auto ev = quantum_event_system({{0.0, kPi}, 1.0});
    REQUIRE(ev.pairs.size() == 1);
    CHECK(ev.pairs[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::abs(union_probability(ev).from_intersections) < 1e-15);
  }
  SUBCASE("constructive pair") {
    const auto ev = quantum_event_system({{0.0, 0.0}, 1.0});
    CHECK(ev.pairs == std::vector<double>{-2.0});
    CHECK(union_probability(ev).from_intersections == 4.0);
  }
  SUBCASE("union reproduces the amplitude rule") {
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
      const auto n = static_cast<std::size_t>(rng.integer(2, 30));
      const InvariantVector v{rng.uniform_vector(n, -20, 20), rng.uniform(0.1, 3)};
      const auto u = union_probability(quantum_event_system(v));
      const double p = oracle::complex_sum_intensity(v.phis, v.kappa);
      CHECK(oracle::relative_error(u.from_intersections, p) < 1e-12);
      CHECK(oracle::relative_error(u.from_unions, p) < 1e-12);
    }
  }
  CHECK(kind_of([] { quantum_event_system({{1.0}, 1.0}); }) == ErrorKind::TooFewPaths);
}

TEST_CASE("pn_kernel families") {
  const std::vector<double> phis{0.3, -1.1, 2.0};
  CHECK(pn_kernel({KernelBranch::Cosine, 1.5}, phis) == pn_amplitude(phis, 1.5));
  CHECK(pn_kernel({KernelBranch::Constant, 0.0}, phis) == 9.0);
  // (Σe^{λΦ})(Σe^{−λΦ}) equals the pairwise form with D = 2cosh + 2.
  const PairKernel hyper{KernelBranch::Hyperbolic, 0.8};
  double pairwise = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) pairwise += kernel_eval(hyper, phis[i] - phis[j]);
  pairwise -= 3.0;
  CHECK(pn_kernel(hyper, phis) == doctest::Approx(pairwise).epsilon(1e-14));
}
