#include "pathprob/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "detail/golden_section.hpp"
#include "pathprob/error.hpp"
#include "pathprob/random.hpp"

namespace pathprob {

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::PairwiseAdditivity: return "pairwise-additivity";
    case Axiom::TimeSymmetry: return "time-symmetry";
    case Axiom::BayesComposition: return "bayes-composition";
    case Axiom::PermutationSymmetry: return "permutation-symmetry";
    case Axiom::ShiftInvariance: return "shift-invariance";
  }
  return "unknown";
}

std::string_view to_string(BranchTag tag) {
  switch (tag) {
    case BranchTag::Cosine: return "cosine";
    case BranchTag::Hyperbolic: return "hyperbolic";
    case BranchTag::Constant: return "constant";
    case BranchTag::Degenerate: return "degenerate";
  }
  return "unknown";
}

Residual make_residual(double lhs, double rhs) {
  const double abs = std::abs(lhs - rhs);
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return {abs, abs / scale};
}

Residual check_pairwise_additivity(const ProbabilityFamily& family, std::span<const double> phis) {
  const std::size_t n = phis.size();
  if (n < 3) throw Error(ErrorKind::TooFewPaths, "pairwise additivity is vacuous for n < 3");
  double pairs = 0.0;
  double singles = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    singles += family(phis.subspan(i, 1));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double two[2] = {phis[i], phis[j]};
      pairs += family(two);
    }
  }
  const double rhs = pairs - (static_cast<double>(n) - 2.0) * singles;
  return make_residual(family(phis), rhs);
}

Residual check_pairwise_additivity(const InvariantVector& v) {
  return check_pairwise_additivity(quantum_family(v.kappa), v.phis);
}

Residual check_time_symmetry(const ProbabilityFamily& family, std::span<const double> phis) {
  std::vector<double> reversed(phis.begin(), phis.end());
  for (auto& phi : reversed) phi = -phi;
  return make_residual(family(phis), family(reversed));
}

Residual check_time_symmetry(const InvariantVector& v) {
  return check_time_symmetry(quantum_family(v.kappa), v.phis);
}

std::vector<double> compose_invariants(std::span<const double> first, std::span<const double> second) {
  std::vector<double> composite;
  composite.reserve(first.size() * second.size());
  for (double phi : first) {
    for (double psi : second) composite.push_back(phi + psi);
  }
  return composite;
}

Residual check_bayes_composition(const ProbabilityFamily& family, std::span<const double> first,
                                 std::span<const double> second) {
  const auto composite = compose_invariants(first, second);
  return make_residual(family(composite), family(first) * family(second));
}

Residual check_bayes_composition(const InvariantVector& first, const InvariantVector& second) {
  if (first.kappa != second.kappa) {
    throw Error(ErrorKind::KappaMismatch, "both legs must share one coupling");
  }
  return check_bayes_composition(quantum_family(first.kappa), first.phis, second.phis);
}

Residual check_permutation_symmetry(const ProbabilityFamily& family, std::span<const double> phis,
                                    std::span<const std::size_t> permutation) {
  if (permutation.size() != phis.size()) {
    throw Error(ErrorKind::SizeMismatch, "permutation length differs from argument count");
  }
  std::vector<double> permuted(phis.size());
  for (std::size_t i = 0; i < phis.size(); ++i) permuted[i] = phis[permutation[i]];
  return make_residual(family(phis), family(permuted));
}

Residual check_permutation_symmetry(const InvariantVector& v, std::span<const std::size_t> permutation) {
  return check_permutation_symmetry(quantum_family(v.kappa), v.phis, permutation);
}

Residual check_shift_invariance(const ProbabilityFamily& family, std::span<const double> phis,
                                double epsilon) {
  if (epsilon == 0.0) throw Error(ErrorKind::ZeroEpsilon, "shift epsilon must be nonzero");
  std::vector<double> shifted(phis.begin(), phis.end());
  for (auto& phi : shifted) phi += epsilon;
  const double base = family(phis);
  const double moved = family(shifted);
  const double derivative = std::abs(moved - base) / std::abs(epsilon);
  const double scale = std::max({1.0, std::abs(base), std::abs(moved)});
  return {derivative, derivative / scale};
}

Residual check_shift_invariance(const InvariantVector& v, double epsilon) {
  return check_shift_invariance(quantum_family(v.kappa), v.phis, epsilon);
}

namespace {

template <typename Visit>
void for_each_subset(std::span<const double> phis, Visit&& visit) {
  const std::size_t k = phis.size();
  std::vector<double> subset;
  subset.reserve(k);
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    subset.clear();
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) subset.push_back(phis[i]);
    }
    visit(std::span<const double>(subset));
  }
}

void require_sorkin_shape(int order, std::span<const double> phis) {
  if (order < 2) throw Error(ErrorKind::SizeMismatch, "Sorkin order must be >= 2");
  if (phis.size() != static_cast<std::size_t>(order)) {
    throw Error(ErrorKind::SizeMismatch, "order-" + std::to_string(order) + " term needs " +
                                             std::to_string(order) + " paths, got " +
                                             std::to_string(phis.size()));
  }
  if (order > 20) throw Error(ErrorKind::TooLarge, "subset enumeration limited to order 20");
}

}  // namespace

double sorkin_interference(const ProbabilityFamily& family, int order, std::span<const double> phis) {
  require_sorkin_shape(order, phis);
  double total = 0.0;
  for_each_subset(phis, [&](std::span<const double> subset) {
    const bool negative = (phis.size() - subset.size()) % 2 == 1;
    const double p = family(subset);
    total += negative ? -p : p;
  });
  return total;
}

double sorkin_interference(int order, const InvariantVector& v) {
  return sorkin_interference(quantum_family(v.kappa), order, v.phis);
}

double sorkin_scale(const ProbabilityFamily& family, std::span<const double> phis) {
  double scale = 1.0;
  for_each_subset(phis, [&](std::span<const double> subset) {
    scale = std::max(scale, std::abs(family(subset)));
  });
  return scale;
}

Residual functional_equation_residual(const PairKernel& kernel, double x, double y) {
  const double dx = kernel_eval(kernel, x);
  const double dy = kernel_eval(kernel, y);
  // Rearranged as D(x+y) + D(x−y) + 2D(x) = D(x)D(y) + (8 − 2D(y)) so that
  // y = 0 (D(0) = 4) cancels exactly in floating point.
  const double lhs = kernel_eval(kernel, x + y) + kernel_eval(kernel, x - y) + 2.0 * dx;
  const double rhs = dx * dy + (8.0 - 2.0 * dy);
  return make_residual(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Branch classification

namespace {

struct Sample {
  double u;  // |x|; D is even
  double d;
};

double max_deviation(std::span<const Sample> samples, auto&& model) {
  double worst = 0.0;
  for (const auto& s : samples) {
    worst = std::max(worst, std::abs(s.d - model(s.u)) / std::max(1.0, std::abs(s.d)));
  }
  return worst;
}

double cosine_objective(std::span<const Sample> samples, double rate) {
  double sum = 0.0;
  for (const auto& s : samples) {
    const double r = s.d - (2.0 * std::cos(rate * s.u) + 2.0);
    sum += r * r;
  }
  return sum;
}

// Gauss–Newton on the untransformed residuals D_i − (2g(rate·u_i) + 2), each
// scaled by max(1, |D_i|).
template <typename G, typename DG>
double gauss_newton(std::span<const Sample> samples, double rate, G&& g, DG&& dg) {
  for (int iter = 0; iter < 50; ++iter) {
    double jtr = 0.0;
    double jtj = 0.0;
    for (const auto& s : samples) {
      const double w = 1.0 / std::max(1.0, std::abs(s.d));
      const double r = (s.d - (2.0 * g(rate * s.u) + 2.0)) * w;
      const double j = 2.0 * s.u * dg(rate * s.u) * w;
      jtr += j * r;
      jtj += j * j;
    }
    if (jtj == 0.0) break;
    const double step = jtr / jtj;
    rate += step;
    if (std::abs(step) <= 1e-15 * std::abs(rate)) break;
  }
  return rate;
}

BranchFit fit_cosine(std::span<const Sample> samples) {
  double max_u = 0.0;
  std::vector<double> us;
  for (const auto& s : samples) {
    max_u = std::max(max_u, s.u);
    us.push_back(s.u);
  }
  std::sort(us.begin(), us.end());
  double min_gap = max_u;
  for (std::size_t i = 1; i < us.size(); ++i) {
    const double gap = us[i] - us[i - 1];
    if (gap > 1e-12 * max_u) min_gap = std::min(min_gap, gap);
  }
  // Scan from well below the lowest rate the samples can resolve up to the
  // Nyquist rate; the step keeps every basin of the objective sampled.
  const double lo = std::numbers::pi / (8.0 * max_u);
  const double hi = std::numbers::pi / min_gap;
  const double step = std::numbers::pi / (16.0 * max_u);
  double best_rate = lo;
  double best = cosine_objective(samples, lo);
  for (double rate = lo + step; rate <= hi; rate += step) {
    const double f = cosine_objective(samples, rate);
    if (f < best) {
      best = f;
      best_rate = rate;
    }
  }
  auto objective = [&](double rate) { return cosine_objective(samples, rate); };
  double rate = detail::golden_section(objective, std::max(0.0, best_rate - step), best_rate + step);
  rate = gauss_newton(
      samples, rate, [](double a) { return std::cos(a); },
      [](double a) { return -std::sin(a); });
  rate = std::abs(rate);
  BranchFit fit;
  fit.branch = BranchTag::Cosine;
  fit.rate = rate;
  fit.bounded = true;
  fit.max_deviation =
      max_deviation(samples, [rate](double u) { return 2.0 * std::cos(rate * u) + 2.0; });
  return fit;
}

BranchFit fit_hyperbolic(std::span<const Sample> samples) {
  // Least squares on arccosh-transformed data: acosh((D − 2)/2) = λ|x|,
  // weighted by sinh² to undo the transform's amplification near x = 0.
  double num = 0.0;
  double den = 0.0;
  for (const auto& s : samples) {
    const double g = (s.d - 2.0) / 2.0;
    if (s.u == 0.0 || g <= 1.0) continue;
    const double a = std::acosh(g);
    const double w = std::sinh(a) * std::sinh(a) / (g * g);
    num += w * s.u * a;
    den += w * s.u * s.u;
  }
  if (den == 0.0) throw Error(ErrorKind::AmbiguousData, "no growth to fit a hyperbolic rate");
  double rate = gauss_newton(
      samples, num / den, [](double a) { return std::cosh(a); },
      [](double a) { return std::sinh(a); });
  rate = std::abs(rate);
  BranchFit fit;
  fit.branch = BranchTag::Hyperbolic;
  fit.rate = rate;
  fit.bounded = false;
  fit.max_deviation =
      max_deviation(samples, [rate](double u) { return 2.0 * std::cosh(rate * u) + 2.0; });
  return fit;
}

bool oscillates(std::vector<Sample> samples) {
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.u < b.u; });
  bool fell = false;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double delta = samples[i].d - samples[i - 1].d;
    if (delta < 0.0) fell = true;
    if (fell && delta > 0.0) return true;
  }
  return false;
}

}  // namespace

BranchFit classify_branch(std::span<const std::pair<double, double>> samples,
                          const BranchClassifierOptions& options) {
  if (samples.size() < options.min_samples) {
    throw Error(ErrorKind::InsufficientSamples, "need at least " +
                                                    std::to_string(options.min_samples) + " samples");
  }
  std::vector<Sample> data;
  data.reserve(samples.size());
  bool has_origin = false;
  double lo = samples.front().second;
  double hi = lo;
  for (const auto& [x, d] : samples) {
    if (x == 0.0) has_origin = true;
    data.push_back({std::abs(x), d});
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (!has_origin) throw Error(ErrorKind::InsufficientSamples, "samples must include x = 0");

  const double tol = options.tolerance;
  if (hi - lo <= tol * std::max(1.0, std::abs(hi))) {
    const double level = 0.5 * (hi + lo);
    BranchFit fit;
    fit.max_deviation = (hi - lo) / std::max(1.0, std::abs(level));
    if (std::abs(level - 4.0) <= tol) {
      fit.branch = BranchTag::Constant;
      return fit;
    }
    if (std::abs(level - 2.0) <= tol) {
      fit.branch = BranchTag::Degenerate;
      return fit;
    }
    throw Error(ErrorKind::AmbiguousData, "flat data at a level other than 4 or 2");
  }

  BranchFit fit;
  if (hi > 4.0 + tol) {
    fit = fit_hyperbolic(data);
  } else if (lo >= -tol && oscillates(data)) {
    fit = fit_cosine(data);
  } else {
    throw Error(ErrorKind::AmbiguousData, "bounded data without oscillation");
  }
  if (!(fit.max_deviation <= tol)) {
    throw Error(ErrorKind::AmbiguousData,
                std::string(to_string(fit.branch)) + " fit deviates by " +
                    std::to_string(fit.max_deviation));
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Randomized suites

void AxiomReport::record(const Residual& r, std::vector<InvariantVector> input) {
  ++trials;
  max_abs_residual = std::max(max_abs_residual, r.abs);
  if (trials == 1 || r.rel > max_rel_residual) {
    max_rel_residual = r.rel;
    worst_case_input = std::move(input);
  }
}

namespace {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer decorrelates the per-axiom streams.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t draw_count(Rng& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

}  // namespace

AxiomReport run_axiom_trials(Axiom axiom, const AxiomSuiteConfig& config) {
  if (config.rates.empty()) throw Error(ErrorKind::InvalidConfig, "at least one rate required");
  if (config.min_paths < 1 || config.max_paths < config.min_paths) {
    throw Error(ErrorKind::InvalidConfig, "invalid path-count range");
  }
  AxiomReport report;
  report.axiom = axiom;
  report.seed = config.seed;
  Rng rng(stream_seed(config.seed, static_cast<std::uint64_t>(axiom)));
  const double range = config.phi_range;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const double rate = config.rates[trial % config.rates.size()];
    const auto family = kernel_family({config.branch, rate});
    switch (axiom) {
      case Axiom::PairwiseAdditivity: {
        const auto n = draw_count(rng, std::max<std::size_t>(3, config.min_paths), std::max<std::size_t>(3, config.max_paths));
        InvariantVector v{rng.uniform_vector(n, -range, range), rate};
        report.record(check_pairwise_additivity(family, v.phis), {v});
        break;
      }
      case Axiom::TimeSymmetry: {
        const auto n = draw_count(rng, config.min_paths, config.max_paths);
        InvariantVector v{rng.uniform_vector(n, -range, range), rate};
        report.record(check_time_symmetry(family, v.phis), {v});
        break;
      }
      case Axiom::BayesComposition: {
        const std::size_t cap = std::max<std::size_t>(1, config.max_composite);
        const auto n = draw_count(rng, 1, std::min(cap, config.max_paths));
        const auto m = draw_count(rng, 1, std::min(cap / n, config.max_paths));
        InvariantVector first{rng.uniform_vector(n, -range, range), rate};
        InvariantVector second{rng.uniform_vector(m, -range, range), rate};
        report.record(check_bayes_composition(family, first.phis, second.phis), {first, second});
        break;
      }
      case Axiom::PermutationSymmetry: {
        const auto n = draw_count(rng, config.min_paths, config.max_paths);
        InvariantVector v{rng.uniform_vector(n, -range, range), rate};
        const auto sigma = rng.permutation(n);
        InvariantVector permuted{std::vector<double>(n), rate};
        for (std::size_t i = 0; i < n; ++i) permuted.phis[i] = v.phis[sigma[i]];
        report.record(check_permutation_symmetry(family, v.phis, sigma), {v, permuted});
        break;
      }
      case Axiom::ShiftInvariance: {
        const auto n = draw_count(rng, config.min_paths, config.max_paths);
        InvariantVector v{rng.uniform_vector(n, -range, range), rate};
        report.record(check_shift_invariance(family, v.phis, config.epsilon), {v});
        break;
      }
    }
  }
  return report;
}

SorkinReport run_sorkin_trials(int order, const AxiomSuiteConfig& config) {
  if (config.rates.empty()) throw Error(ErrorKind::InvalidConfig, "at least one rate required");
  SorkinReport report;
  report.order = order;
  report.interference_values.reserve(config.trials);
  Rng rng(stream_seed(config.seed, 100 + static_cast<std::uint64_t>(order)));
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const double rate = config.rates[trial % config.rates.size()];
    const PairKernel kernel{config.branch, rate};
    const auto family = kernel_family(kernel);
    const auto phis =
        rng.uniform_vector(static_cast<std::size_t>(order), -config.phi_range, config.phi_range);
    const double value = sorkin_interference(family, order, phis);
    const double expected = order == 2 ? kernel_eval(kernel, phis[0] - phis[1]) - 2.0 : 0.0;
    const double deviation = std::abs(value - expected);
    report.interference_values.push_back(value);
    report.max_abs = std::max(report.max_abs, std::abs(value));
    report.max_abs_deviation = std::max(report.max_abs_deviation, deviation);
    report.max_rel_deviation =
        std::max(report.max_rel_deviation, deviation / sorkin_scale(family, phis));
  }
  return report;
}

namespace {

BranchFit classify_kernel(const PairKernel& kernel) {
  // Two and a half periods (or e-foldings) of the kernel, origin included.
  const double rate = kernel.rate > 0.0 ? kernel.rate : 1.0;
  const double span = 5.0 * std::numbers::pi / rate;
  constexpr int kSamples = 257;
  std::vector<std::pair<double, double>> samples;
  samples.reserve(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    const double x = span * i / (kSamples - 1);
    samples.emplace_back(x, kernel_eval(kernel, x));
  }
  return classify_branch(samples);
}

}  // namespace

AxiomSuiteResult run_axiom_suite(const AxiomSuiteConfig& config) {
  AxiomSuiteResult result;
  result.passed = true;
  for (Axiom axiom : {Axiom::PairwiseAdditivity, Axiom::TimeSymmetry, Axiom::BayesComposition,
                      Axiom::PermutationSymmetry, Axiom::ShiftInvariance}) {
    result.reports.push_back(run_axiom_trials(axiom, config));
    if (!(result.reports.back().max_rel_residual < config.tolerance)) result.passed = false;
  }
  for (int order : config.sorkin_orders) {
    result.sorkin.push_back(run_sorkin_trials(order, config));
    if (!(result.sorkin.back().max_rel_deviation < config.tolerance)) result.passed = false;
  }
  result.kernel_branch = classify_kernel({config.branch, config.rates.front()});
  return result;
}

}  // namespace pathprob
