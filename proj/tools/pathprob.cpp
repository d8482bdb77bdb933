// pathprob: command-line front end.
//
// Exit codes: 0 success, 1 physics or validation failure, 2 usage or parse
// failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pathprob/axioms.hpp"
#include "pathprob/error.hpp"
#include "pathprob/experiments.hpp"
#include "pathprob/io.hpp"
#include "pathprob/random.hpp"
#include "pathprob/spectral.hpp"

namespace {

using namespace pathprob;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string out;
  std::string format = "csv";
};

// Primary artifact goes to --out when given, otherwise to stdout. Human
// summaries go to stdout when the artifact has its own file, else stderr.
class Output {
 public:
  explicit Output(const GlobalOptions& g) : path_(g.out) {}

  void write(const std::string& text) const {
    if (path_.empty()) {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidConfig, "cannot write '" + path_ + "'");
    file << text;
  }

  std::ostream& summary() const { return path_.empty() ? std::cerr : std::cout; }

 private:
  std::string path_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- check-axioms ---------------------------------------------------------

struct CheckAxiomsOptions {
  std::string config;
  std::string kernel;
  std::optional<std::size_t> trials;
};

int cmd_check_axioms(const GlobalOptions& g, const CheckAxiomsOptions& o) {
  AxiomSuiteConfig config;
  config.seed = g.seed;
  json file = json::object();
  if (!o.config.empty()) file = load_json_file(o.config);
  if (!file.is_object()) throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");

  std::string kernel = o.kernel.empty() ? file.value("kernel", std::string("cosine")) : o.kernel;
  try {
    config.branch = kernel_branch_from_string(kernel);
    if (config.branch == KernelBranch::Hyperbolic) {
      // Keep e^{λΦ} well inside double range for |Φ| up to twice phi_range.
      config.rates = {0.01, 0.05, 0.1};
    }
    config.trials = file.value("trials", config.trials);
    config.rates = file.value("rates", config.rates);
    config.min_paths = file.value("min_paths", config.min_paths);
    config.max_paths = file.value("max_paths", config.max_paths);
    config.max_composite = file.value("max_composite", config.max_composite);
    config.phi_range = file.value("phi_range", config.phi_range);
    config.epsilon = file.value("epsilon", config.epsilon);
    config.sorkin_orders = file.value("sorkin_orders", config.sorkin_orders);
    config.tolerance = file.value("tolerance", config.tolerance);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
  if (o.trials) config.trials = *o.trials;
  if (g.tol) config.tolerance = *g.tol;
  if (config.rates.empty()) throw Error(ErrorKind::InvalidConfig, "rates must not be empty");
  for (int k : config.sorkin_orders) {
    if (k < 2 || k > 12) throw Error(ErrorKind::InvalidConfig, "Sorkin orders must lie in [2, 12]");
  }

  const auto result = run_axiom_suite(config);

  json report;
  report["command"] = "check-axioms";
  report["seed"] = config.seed;
  report["kernel"] = {{"branch", std::string(to_string(config.branch))}, {"rates", config.rates}};
  report["tolerance"] = config.tolerance;
  report["axioms"] = json::array();
  for (const auto& r : result.reports) report["axioms"].push_back(to_json(r));
  report["sorkin"] = json::array();
  for (const auto& s : result.sorkin) report["sorkin"].push_back(to_json(s));
  report["branch_classification"] = to_json(result.kernel_branch);
  report["warnings"] = json::array();
  if (!result.kernel_branch.bounded) {
    report["warnings"].push_back("kernel branch is unbounded: P^n is not a bounded probability family");
  }
  report["passed"] = result.passed;

  Output out(g);
  out.write(dump(report));
  auto& log = out.summary();
  for (const auto& r : result.reports) {
    log << to_string(r.axiom) << ": max_rel_residual=" << format_double(r.max_rel_residual) << '\n';
  }
  for (const auto& s : result.sorkin) {
    log << "sorkin I_" << s.order << ": max_rel_deviation=" << format_double(s.max_rel_deviation) << '\n';
  }
  log << "branch: " << to_string(result.kernel_branch.branch)
      << (result.kernel_branch.bounded ? " (bounded)" : " (unbounded)") << '\n';
  log << (result.passed ? "PASS" : "FAIL") << '\n';
  return result.passed ? kExitOk : kExitFailure;
}

// --- pattern / propagator --------------------------------------------------

std::string render_pattern(const Pattern& p, const std::string& format) {
  if (format == "json") {
    return dump({{"x", p.screen_points}, {"intensity", p.intensities}});
  }
  return pattern_csv(p);
}

void print_pattern_summary(std::ostream& log, const Pattern& p) {
  double lo = p.intensities.front();
  double hi = lo;
  for (double v : p.intensities) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  log << "points=" << p.intensities.size() << " min=" << format_double(lo) << " max=" << format_double(hi)
      << " fringes=" << count_fringes(p) << '\n';
}

int cmd_pattern(const GlobalOptions& g, const std::string& config_path) {
  const auto exp = slit_experiment_from_json(load_json_file(config_path));
  const auto pattern = slit_pattern(exp);
  Output out(g);
  out.write(render_pattern(pattern, g.format));
  print_pattern_summary(out.summary(), pattern);
  return kExitOk;
}

int cmd_propagator(const GlobalOptions& g, const std::string& config_path) {
  const json config = load_json_file(config_path);
  Event source;
  std::vector<Event> targets;
  LatticeSpec lattice;
  ParticleParams particle;
  double kappa = 1.0;
  try {
    source = event_from_json(config.at("source"));
    const json& t = config.at("targets");
    const double target_time = t.at("t").get<double>();
    std::vector<double> xs;
    if (t.contains("points")) {
      xs = t.at("points").get<std::vector<double>>();
    } else {
      const json& r = t.at("screen");
      const auto count = r.at("count").get<std::size_t>();
      const double lo = r.at("min").get<double>();
      const double hi = r.at("max").get<double>();
      for (std::size_t i = 0; i < count; ++i) {
        xs.push_back(count == 1 ? lo : lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(count - 1)));
      }
    }
    if (xs.empty()) throw Error(ErrorKind::InvalidConfig, "no target points");
    for (double x : xs) targets.push_back({target_time, x});
    lattice = lattice_from_json(config.at("lattice"));
    particle = particle_from_json(config.value("particle", json::object()));
    kappa = config.value("kappa", 1.0);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
  if (!(targets.front().t > source.t)) throw Error(ErrorKind::InvalidConfig, "targets must follow the source");
  const auto result = lattice_propagator_intensity(source, targets, lattice, particle, kappa);
  Output out(g);
  out.write(render_pattern(result.pattern, g.format));
  print_pattern_summary(out.summary(), result.pattern);
  out.summary() << "paths_per_target=" << result.paths_per_target
                << " skipped_superluminal=" << result.skipped_superluminal << '\n';
  return kExitOk;
}

// --- fit -------------------------------------------------------------------

struct FitCliOptions {
  std::string pattern;
  std::string config;
  FitOptions fit;
};

int cmd_fit(const GlobalOptions& g, const FitCliOptions& o) {
  const Pattern pattern = load_pattern_csv(o.pattern);
  json geometry = load_json_file(o.config);
  // The fit uses the pattern's own screen points.
  if (geometry.is_object() && !geometry.contains("screen_points") && !geometry.contains("screen")) {
    geometry["screen_points"] = pattern.screen_points;
  }
  const auto exp = slit_experiment_from_json(geometry);
  const auto fit = fit_kappa(pattern, exp, o.fit);
  Output out(g);
  out.write(dump({{"kappa", fit.kappa}, {"rms", fit.rms}, {"normalized", true}}));
  return kExitOk;
}

// --- spectrum ----------------------------------------------------------------

struct SpectrumOptions {
  std::string config;
  std::size_t trials = 200;
  std::size_t points = 16;
};

int cmd_spectrum(const GlobalOptions& g, const SpectrumOptions& o) {
  const json config = load_json_file(o.config);
  GeneralizedAxiomOptions axiom_options;
  axiom_options.seed = g.seed;
  axiom_options.trials = o.trials;
  if (g.tol) axiom_options.tolerance = *g.tol;
  SpectralMeasure measure;
  std::vector<std::vector<double>> points;
  try {
    const bool wrapped = config.contains("measure");
    measure = spectral_measure_from_json(wrapped ? config.at("measure") : config);
    axiom_options.pair_kappa = config.value("pair_kappa", axiom_options.pair_kappa);
    if (config.contains("pair")) axiom_options.pair_measure = spectral_measure_from_json(config.at("pair"));
    if (config.contains("points")) points = config.at("points").get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
  validate(measure);  // HyperplaneViolation / DimensionMismatch → exit 1

  if (points.empty()) {
    Rng rng(g.seed);
    for (std::size_t i = 0; i < o.points; ++i) points.push_back(rng.uniform_vector(measure.n, -10.0, 10.0));
  }
  std::vector<double> values;
  for (const auto& p : points) values.push_back(eval_spectral(measure, p));

  std::string rendered;
  if (g.format == "json") {
    rendered = dump({{"points", points}, {"values", values}});
  } else {
    std::ostringstream csv;
    for (std::size_t i = 0; i < measure.n; ++i) csv << "phi_" << (i + 1) << ',';
    csv << "value\n";
    for (std::size_t r = 0; r < points.size(); ++r) {
      for (double x : points[r]) csv << format_double(x) << ',';
      csv << format_double(values[r]) << '\n';
    }
    rendered = csv.str();
  }
  const auto flags = check_generalized_axioms(measure, axiom_options);
  Output out(g);
  out.write(rendered);
  auto& log = out.summary();
  auto flag = [](bool b) { return b ? "true" : "false"; };
  log << "time-symmetry: " << flag(flags.time_symmetry) << '\n'
      << "shift-invariance: " << flag(flags.shift_invariance) << '\n'
      << "pairwise-additivity: " << flag(flags.pairwise_additivity) << '\n'
      << "permutation-symmetry: " << flag(flags.permutation_symmetry) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-path probability engine: axioms, spectra, slit patterns, kappa fits"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for every randomized step")->default_val(0);
  app.add_option("--tol", g.tol, "Residual tolerance override");
  app.add_option("--out", g.out, "Output path (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->default_val("csv");

  CheckAxiomsOptions axioms_opts;
  auto* check = app.add_subcommand("check-axioms", "Randomized axiom and Sorkin-hierarchy suite");
  check->add_option("--config", axioms_opts.config, "Suite configuration JSON");
  check->add_option("--kernel", axioms_opts.kernel, "Pair kernel branch")
      ->check(CLI::IsMember({"cosine", "hyperbolic", "constant"}));
  check->add_option("--trials", axioms_opts.trials, "Trials per axiom");

  std::string pattern_config;
  auto* pattern = app.add_subcommand("pattern", "Multi-slit intensity pattern");
  pattern->add_option("--config", pattern_config, "Slit experiment JSON")->required();

  FitCliOptions fit_opts;
  auto* fit = app.add_subcommand("fit", "Recover kappa from a pattern CSV");
  fit->add_option("--pattern", fit_opts.pattern, "Pattern CSV (x,intensity)")->required();
  fit->add_option("--config", fit_opts.config, "Slit geometry JSON")->required();
  fit->add_option("--kappa-lo", fit_opts.fit.kappa_lo, "Lower end of the kappa scan");
  fit->add_option("--kappa-hi", fit_opts.fit.kappa_hi, "Upper end of the kappa scan");
  fit->add_option("--seeds", fit_opts.fit.seeds, "Log-spaced scan points");

  SpectrumOptions spectrum_opts;
  auto* spectrum = app.add_subcommand("spectrum", "Evaluate a spectral measure and check axioms");
  spectrum->add_option("--config", spectrum_opts.config, "Measure JSON")->required();
  spectrum->add_option("--trials", spectrum_opts.trials, "Axiom trials");
  spectrum->add_option("--points", spectrum_opts.points, "Random evaluation points when none given");

  std::string propagator_config;
  auto* propagator = app.add_subcommand("propagator", "Lattice sum-over-paths intensity");
  propagator->add_option("--config", propagator_config, "Propagator JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check) return cmd_check_axioms(g, axioms_opts);
    if (*pattern) return cmd_pattern(g, pattern_config);
    if (*fit) return cmd_fit(g, fit_opts);
    if (*spectrum) return cmd_spectrum(g, spectrum_opts);
    if (*propagator) return cmd_propagator(g, propagator_config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidConfig ? kExitUsage : kExitFailure;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
