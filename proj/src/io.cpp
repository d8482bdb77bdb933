#include "pathprob/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pathprob/error.hpp"

namespace pathprob {

json to_json(const InvariantVector& v) { return {{"kappa", v.kappa}, {"phis", v.phis}}; }

json to_json(const AxiomReport& report) {
  json worst = json::array();
  for (const auto& v : report.worst_case_input) worst.push_back(to_json(v));
  return {{"axiom", std::string(to_string(report.axiom))},
          {"trials", report.trials},
          {"max_abs_residual", report.max_abs_residual},
          {"max_rel_residual", report.max_rel_residual},
          {"seed", report.seed},
          {"worst_case_input", worst}};
}

json to_json(const SorkinReport& report) {
  return {{"order", report.order},
          {"interference_values", report.interference_values},
          {"max_abs", report.max_abs},
          {"max_abs_deviation", report.max_abs_deviation},
          {"max_rel_deviation", report.max_rel_deviation}};
}

json to_json(const BranchFit& fit) {
  return {{"branch", std::string(to_string(fit.branch))},
          {"rate", fit.rate},
          {"max_deviation", fit.max_deviation},
          {"bounded", fit.bounded}};
}

json to_json(const SpectralMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms) atoms.push_back({{"w", a.weight}, {"alpha", a.alpha}});
  return {{"n", m.n}, {"atoms", atoms}};
}

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); }

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) config_error(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T get_field_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get_field<T>(j, key);
}

}  // namespace

SpectralMeasure spectral_measure_from_json(const json& j) {
  SpectralMeasure m;
  m.n = get_field<std::size_t>(j, "n");
  const auto atoms = get_field<json>(j, "atoms");
  if (!atoms.is_array()) config_error("'atoms' must be an array");
  for (const auto& a : atoms) {
    m.atoms.push_back({get_field<double>(a, "w"), get_field<std::vector<double>>(a, "alpha")});
  }
  return m;
}

KernelBranch kernel_branch_from_string(std::string_view name) {
  if (name == "cosine") return KernelBranch::Cosine;
  if (name == "hyperbolic") return KernelBranch::Hyperbolic;
  if (name == "constant") return KernelBranch::Constant;
  config_error("unknown kernel branch '" + std::string(name) + "'");
}

std::string_view to_string(KernelBranch branch) {
  switch (branch) {
    case KernelBranch::Cosine: return "cosine";
    case KernelBranch::Hyperbolic: return "hyperbolic";
    case KernelBranch::Constant: return "constant";
  }
  return "unknown";
}

ParticleParams particle_from_json(const json& j) {
  ParticleParams p;
  p.mass = get_field_or<double>(j, "mass", 1.0);
  if (!(p.mass > 0.0)) config_error("particle mass must be positive");
  const auto mode = get_field_or<std::string>(j, "mode", "nonrelativistic-action");
  if (mode == "relativistic-proper-time") {
    p.mode = InvariantMode::RelativisticProperTime;
  } else if (mode == "nonrelativistic-action") {
    p.mode = InvariantMode::NonrelativisticAction;
  } else {
    config_error("unknown particle mode '" + mode + "'");
  }
  // Polynomial potential: coefficients c0, c1, c2, … of V(x) = Σ c_k x^k.
  auto coefficients = get_field_or<std::vector<double>>(j, "potential", {});
  if (!coefficients.empty()) {
    p.potential = [c = std::move(coefficients)](double x) {
      double v = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
      return v;
    };
  }
  return p;
}

Event event_from_json(const json& j) { return {get_field<double>(j, "t"), get_field<double>(j, "x")}; }

namespace {

std::vector<double> points_from_json(const json& j, const char* list_key, const char* range_key) {
  if (j.contains(list_key)) return get_field<std::vector<double>>(j, list_key);
  if (!j.contains(range_key)) {
    config_error(std::string("need '") + list_key + "' or '" + range_key + "'");
  }
  const auto range = j.at(range_key);
  const double lo = get_field<double>(range, "min");
  const double hi = get_field<double>(range, "max");
  const auto count = get_field<std::size_t>(range, "count");
  if (count == 0) config_error("point count must be positive");
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) {
    xs[i] = count == 1 ? lo : lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(count - 1));
  }
  if (count > 1) xs.back() = hi;
  return xs;
}

}  // namespace

SlitExperiment slit_experiment_from_json(const json& j) {
  SlitExperiment exp;
  exp.source = event_from_json(get_field<json>(j, "source"));
  exp.slit_time = get_field<double>(j, "slit_time");
  exp.slit_positions = get_field<std::vector<double>>(j, "slit_positions");
  exp.screen_time = get_field<double>(j, "screen_time");
  exp.screen_points = points_from_json(j, "screen_points", "screen");
  exp.particle = particle_from_json(get_field_or<json>(j, "particle", json::object()));
  exp.kappa = get_field_or<double>(j, "kappa", 1.0);
  try {
    validate(exp);
  } catch (const Error& e) {
    config_error(e.what());
  }
  return exp;
}

LatticeSpec lattice_from_json(const json& j) {
  LatticeSpec lattice;
  lattice.time_slices = get_field<std::size_t>(j, "time_slices");
  lattice.positions_per_slice = get_field<std::size_t>(j, "positions_per_slice");
  const auto range = get_field<std::vector<double>>(j, "x_range");
  if (range.size() != 2 || !(range[0] <= range[1])) config_error("x_range must be [min, max]");
  lattice.x_min = range[0];
  lattice.x_max = range[1];
  lattice.budget = get_field_or<std::size_t>(j, "budget", lattice.budget);
  return lattice;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    config_error("malformed JSON in '" + path + "': " + e.what());
  }
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_pattern_csv(std::ostream& out, const Pattern& pattern) {
  out << "x,intensity\n";
  for (std::size_t i = 0; i < pattern.screen_points.size(); ++i) {
    out << format_double(pattern.screen_points[i]) << ',' << format_double(pattern.intensities[i]) << '\n';
  }
}

std::string pattern_csv(const Pattern& pattern) {
  std::ostringstream out;
  write_pattern_csv(out, pattern);
  return out.str();
}

namespace {

double parse_number(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    config_error("line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

Pattern read_pattern_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) config_error("empty pattern file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,intensity") config_error("expected header 'x,intensity'");
  Pattern pattern;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      config_error("line " + std::to_string(number) + ": expected two fields");
    }
    const std::string_view view(line);
    pattern.screen_points.push_back(parse_number(view.substr(0, comma), number));
    pattern.intensities.push_back(parse_number(view.substr(comma + 1), number));
  }
  if (pattern.screen_points.empty()) config_error("pattern has no rows");
  return pattern;
}

Pattern load_pattern_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open '" + path + "'");
  return read_pattern_csv(in);
}

}  // namespace pathprob
