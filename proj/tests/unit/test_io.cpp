#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../test_helpers.hpp"
#include "pathprob/io.hpp"
#include "pathprob/random.hpp"

using namespace pathprob;
using testing::kind_of;

TEST_CASE("pattern CSV round trip") {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 50));
    Pattern p{rng.uniform_vector(n, -1e3, 1e3), {}};
    for (std::size_t i = 0; i < n; ++i) p.intensities.push_back(std::ldexp(rng.unit(), static_cast<int>(rng.integer(-60, 60))));
    std::istringstream in(pattern_csv(p));
    const auto back = read_pattern_csv(in);
    CHECK(back.screen_points == p.screen_points);
    CHECK(back.intensities == p.intensities);
  }
  CHECK(pattern_csv({{0.5}, {4.0}}) == "x,intensity\n0.5,4\n");
}

TEST_CASE("pattern CSV rejects malformed input") {
  for (const char* text : {"", "x,intensity\n", "x,y\n0,1\n", "x,intensity\n0,1\n2\n", "x,intensity\n0,abc\n",
                           "x,intensity\n0,1,2\n", "x,intensity\n0.5,1e\n"}) {
    std::istringstream in(text);
    CHECK(kind_of([&] { read_pattern_csv(in); }) == ErrorKind::InvalidConfig);
  }
  CHECK(kind_of([] { load_pattern_csv("/nonexistent/pattern.csv"); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("spectral measure JSON") {
  const auto m = quantum_spectrum(3, 1.5);
  const auto back = spectral_measure_from_json(to_json(m));
  REQUIRE(back.atoms.size() == m.atoms.size());
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    CHECK(back.atoms[i].weight == m.atoms[i].weight);
    CHECK(back.atoms[i].alpha == m.atoms[i].alpha);
  }
  CHECK(kind_of([] { spectral_measure_from_json(json::parse(R"({"n": 2})")); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { spectral_measure_from_json(json::parse(R"({"n": 2, "atoms": [{"w": "x", "alpha": [1, -1]}]})")); }) ==
        ErrorKind::InvalidConfig);
}

TEST_CASE("slit experiment JSON") {
  const auto j = json::parse(R"({
    "source": {"t": 0, "x": 0}, "slit_time": 1, "slit_positions": [-0.5, 0.5],
    "screen_time": 2, "screen": {"min": -1, "max": 1, "count": 5},
    "particle": {"mass": 2, "mode": "nonrelativistic-action", "potential": [1, 0, 3]},
    "kappa": 1.5})");
  const auto e = slit_experiment_from_json(j);
  CHECK(e.screen_points == std::vector<double>{-1, -0.5, 0, 0.5, 1});
  CHECK(e.kappa == 1.5);
  CHECK(e.particle.mass == 2.0);
  REQUIRE(e.particle.potential);
  CHECK(e.particle.potential(2.0) == 13.0);

  auto broken = j;
  broken["particle"]["mode"] = "classical";
  CHECK(kind_of([&] { slit_experiment_from_json(broken); }) == ErrorKind::InvalidConfig);
  broken = j;
  broken.erase("slit_positions");
  CHECK(kind_of([&] { slit_experiment_from_json(broken); }) == ErrorKind::InvalidConfig);
  broken = j;
  broken["kappa"] = "fast";
  CHECK(kind_of([&] { slit_experiment_from_json(broken); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("lattice and kernel parsing") {
  const auto l = lattice_from_json(json::parse(R"({"time_slices": 3, "positions_per_slice": 5, "x_range": [-2, 2]})"));
  CHECK(l.time_slices == 3);
  CHECK(l.x_min == -2.0);
  CHECK(l.budget == 1'000'000);
  CHECK(kernel_branch_from_string("hyperbolic") == KernelBranch::Hyperbolic);
  CHECK(to_string(KernelBranch::Cosine) == "cosine");
  CHECK(kind_of([] { kernel_branch_from_string("quartic"); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { load_json_file("/nonexistent.json"); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("report JSON") {
  AxiomReport r;
  r.axiom = Axiom::BayesComposition;
  r.trials = 3;
  r.record({1e-13, 2e-14}, {{{1, 2}, 1.0}, {{3}, 1.0}});
  const auto j = to_json(r);
  CHECK(j["axiom"] == "bayes-composition");
  CHECK(j["max_rel_residual"] == 2e-14);
  CHECK(j["worst_case_input"].size() == 2);
  CHECK(format_double(0.1) == "0.10000000000000001");
}
