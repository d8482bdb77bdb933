#include "pathprob/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "detail/golden_section.hpp"
#include "pathprob/error.hpp"
#include "pathprob/probability.hpp"

namespace pathprob {

void validate(const SlitExperiment& exp) {
  if (!(exp.source.t < exp.slit_time && exp.slit_time < exp.screen_time)) {
    throw Error(ErrorKind::InvalidConfig, "need source.t < slit_time < screen_time");
  }
  if (exp.slit_positions.empty()) throw Error(ErrorKind::InvalidConfig, "at least one slit required");
  if (exp.screen_points.empty()) throw Error(ErrorKind::InvalidConfig, "at least one screen point required");
  auto slits = exp.slit_positions;
  std::sort(slits.begin(), slits.end());
  if (std::adjacent_find(slits.begin(), slits.end()) != slits.end()) {
    throw Error(ErrorKind::InvalidConfig, "slit positions must be distinct");
  }
  if (!(exp.particle.mass > 0.0)) throw Error(ErrorKind::InvalidConfig, "mass must be positive");
}

std::size_t path_count(const LatticeSpec& lattice) {
  std::size_t count = 1;
  for (std::size_t k = 0; k < lattice.time_slices; ++k) {
    if (lattice.positions_per_slice != 0 &&
        count > std::numeric_limits<std::size_t>::max() / lattice.positions_per_slice) {
      return std::numeric_limits<std::size_t>::max();
    }
    count *= lattice.positions_per_slice;
  }
  return count;
}

Pattern normalized_max_one(const Pattern& pattern) {
  double peak = 0.0;
  for (double v : pattern.intensities) peak = std::max(peak, v);
  if (!(peak > 0.0)) throw Error(ErrorKind::NoFringes, "pattern has no positive intensity");
  Pattern out = pattern;
  for (auto& v : out.intensities) v /= peak;
  out.normalization = Normalization::MaxOne;
  return out;
}

std::size_t count_fringes(const Pattern& pattern) {
  const auto& y = pattern.intensities;
  std::size_t count = 0;
  std::size_t i = 1;
  while (i + 1 < y.size()) {
    if (y[i] > y[i - 1]) {
      std::size_t j = i;
      while (j + 1 < y.size() && y[j + 1] == y[i]) ++j;
      if (j + 1 < y.size() && y[j + 1] < y[i]) ++count;
      i = j + 1;
    } else {
      ++i;
    }
  }
  return count;
}

std::vector<InvariantVector> slit_invariants(const SlitExperiment& exp) {
  validate(exp);
  std::vector<InvariantVector> out;
  out.reserve(exp.screen_points.size());
  for (std::size_t p = 0; p < exp.screen_points.size(); ++p) {
    InvariantVector v{{}, exp.kappa};
    v.phis.reserve(exp.slit_positions.size());
    for (std::size_t s = 0; s < exp.slit_positions.size(); ++s) {
      const Trajectory path({exp.source.t, exp.slit_time, exp.screen_time},
                            {exp.source.x, exp.slit_positions[s], exp.screen_points[p]});
      try {
        v.phis.push_back(path_invariant(path, exp.particle));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SuperluminalSegment) throw;
        throw Error(ErrorKind::SuperluminalSegment,
                    "path through slit " + std::to_string(s) + " (x = " +
                        std::to_string(exp.slit_positions[s]) + ") to screen point " +
                        std::to_string(p) + " (x = " + std::to_string(exp.screen_points[p]) +
                        ") exceeds light speed");
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

Pattern slit_pattern(const SlitExperiment& exp) {
  Pattern pattern;
  pattern.screen_points = exp.screen_points;
  for (const auto& v : slit_invariants(exp)) pattern.intensities.push_back(pn_amplitude(v));
  return pattern;
}

// ---------------------------------------------------------------------------
// Lattice enumeration

namespace {

void check_lattice(const Event& source, const Event& target, const LatticeSpec& lattice) {
  if (!(target.t > source.t)) throw Error(ErrorKind::BadInterval, "target must follow source");
  if (lattice.time_slices > 0 && lattice.positions_per_slice == 0) {
    throw Error(ErrorKind::InvalidConfig, "positions_per_slice must be >= 1");
  }
  if (!(lattice.x_min <= lattice.x_max)) throw Error(ErrorKind::InvalidConfig, "x_range must be ordered");
  const std::size_t count = path_count(lattice);
  if (count > lattice.budget) {
    throw Error(ErrorKind::BudgetExceeded, std::to_string(lattice.positions_per_slice) + "^" +
                                               std::to_string(lattice.time_slices) +
                                               " paths exceed the budget of " +
                                               std::to_string(lattice.budget));
  }
}

// Odometer over index tuples in [0, base)^digits, last digit fastest.
template <typename Visit>
void for_each_index_tuple(std::size_t digits, std::size_t base, Visit&& visit) {
  std::vector<std::size_t> index(digits, 0);
  while (true) {
    visit(index);
    std::size_t d = digits;
    while (d > 0) {
      --d;
      if (++index[d] < base) break;
      index[d] = 0;
      if (d == 0) return;
    }
    if (digits == 0) return;
  }
}

}  // namespace

std::vector<double> lattice_times(const Event& source, const Event& target, const LatticeSpec& lattice) {
  const std::size_t segments = lattice.time_slices + 1;
  std::vector<double> times(segments + 1);
  for (std::size_t k = 0; k <= segments; ++k) {
    times[k] = source.t + (target.t - source.t) * (static_cast<double>(k) / static_cast<double>(segments));
  }
  times.front() = source.t;
  times.back() = target.t;
  return times;
}

std::vector<double> lattice_positions(const LatticeSpec& lattice) {
  const std::size_t count = lattice.positions_per_slice;
  if (count == 1) return {0.5 * (lattice.x_min + lattice.x_max)};
  std::vector<double> xs(count);
  for (std::size_t j = 0; j < count; ++j) {
    xs[j] = lattice.x_min +
            (lattice.x_max - lattice.x_min) * (static_cast<double>(j) / static_cast<double>(count - 1));
  }
  if (count > 1) xs.back() = lattice.x_max;
  return xs;
}

void for_each_lattice_path(const Event& source, const Event& target, const LatticeSpec& lattice,
                           const std::function<void(const Trajectory&)>& visit) {
  check_lattice(source, target, lattice);
  const auto times = lattice_times(source, target, lattice);
  const auto xs = lattice_positions(lattice);
  std::vector<double> nodes(times.size());
  nodes.front() = source.x;
  nodes.back() = target.x;
  for_each_index_tuple(lattice.time_slices, lattice.positions_per_slice,
                       [&](const std::vector<std::size_t>& index) {
                         for (std::size_t k = 0; k < index.size(); ++k) nodes[k + 1] = xs[index[k]];
                         visit(Trajectory(times, nodes));
                       });
}

std::vector<Trajectory> lattice_paths(const Event& source, const Event& target, const LatticeSpec& lattice) {
  std::vector<Trajectory> paths;
  paths.reserve(std::min(path_count(lattice), lattice.budget));
  for_each_lattice_path(source, target, lattice, [&](const Trajectory& t) { paths.push_back(t); });
  return paths;
}

PropagatorResult lattice_propagator_intensity(const Event& source, std::span<const Event> targets,
                                              const LatticeSpec& lattice, const ParticleParams& particle,
                                              double kappa) {
  PropagatorResult result;
  result.paths_per_target = path_count(lattice);
  for (const auto& target : targets) {
    double re = 0.0;
    double im = 0.0;
    std::size_t admitted = 0;
    for_each_lattice_path(source, target, lattice, [&](const Trajectory& path) {
      double phi = 0.0;
      try {
        phi = path_invariant(path, particle);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SuperluminalSegment) throw;
        ++result.skipped_superluminal;
        return;
      }
      re += std::cos(kappa * phi);
      im += std::sin(kappa * phi);
      ++admitted;
    });
    result.pattern.screen_points.push_back(target.x);
    // A lone path is P¹ ≡ 1 exactly, matching pn_amplitude.
    result.pattern.intensities.push_back(admitted == 1 ? 1.0 : re * re + im * im);
  }
  return result;
}

LatticeFactorization lattice_bayes_factorization(const Event& source, const Event& target,
                                                 const LatticeSpec& lattice, std::size_t pinned_slice,
                                                 std::size_t pinned_index, const ParticleParams& particle,
                                                 double kappa) {
  check_lattice(source, target, lattice);
  if (pinned_slice >= lattice.time_slices || pinned_index >= lattice.positions_per_slice) {
    throw Error(ErrorKind::InvalidConfig, "pinned node lies outside the lattice");
  }
  const auto times = lattice_times(source, target, lattice);
  const auto xs = lattice_positions(lattice);
  const std::size_t junction = pinned_slice + 1;  // node index of the pinned point
  const std::vector<double> head_times(times.begin(), times.begin() + junction + 1);
  const std::vector<double> tail_times(times.begin() + junction, times.end());
  const std::size_t head_free = pinned_slice;
  const std::size_t tail_free = lattice.time_slices - pinned_slice - 1;

  std::vector<std::vector<double>> heads;
  for_each_index_tuple(head_free, lattice.positions_per_slice, [&](const std::vector<std::size_t>& index) {
    std::vector<double> nodes{source.x};
    for (std::size_t i : index) nodes.push_back(xs[i]);
    nodes.push_back(xs[pinned_index]);
    heads.push_back(std::move(nodes));
  });
  std::vector<std::vector<double>> tails;
  for_each_index_tuple(tail_free, lattice.positions_per_slice, [&](const std::vector<std::size_t>& index) {
    std::vector<double> nodes{xs[pinned_index]};
    for (std::size_t i : index) nodes.push_back(xs[i]);
    nodes.push_back(target.x);
    tails.push_back(std::move(nodes));
  });

  LatticeFactorization out;
  out.first_leg.kappa = out.second_leg.kappa = out.composite.kappa = kappa;
  for (const auto& h : heads) out.first_leg.phis.push_back(path_invariant(Trajectory(head_times, h), particle));
  for (const auto& t : tails) out.second_leg.phis.push_back(path_invariant(Trajectory(tail_times, t), particle));
  for (const auto& h : heads) {
    for (const auto& t : tails) {
      std::vector<double> nodes(h);
      nodes.insert(nodes.end(), t.begin() + 1, t.end());
      out.composite.phis.push_back(path_invariant(Trajectory(times, nodes), particle));
    }
  }
  out.composite_intensity = pn_amplitude(out.composite);
  out.product_intensity = pn_amplitude(out.first_leg) * pn_amplitude(out.second_leg);
  out.residual = make_residual(out.composite_intensity, out.product_intensity);
  return out;
}

// ---------------------------------------------------------------------------
// κ recovery

KappaFit fit_kappa(const Pattern& pattern, const SlitExperiment& geometry, const FitOptions& options) {
  if (pattern.screen_points.size() != pattern.intensities.size()) {
    throw Error(ErrorKind::SizeMismatch, "pattern columns differ in length");
  }
  const std::size_t count = pattern.screen_points.size();
  if (count < options.min_points) {
    throw Error(ErrorKind::InsufficientSamples, "need at least " + std::to_string(options.min_points) +
                                                    " screen points, got " + std::to_string(count));
  }
  if (!(options.kappa_lo > 0.0 && options.kappa_hi > options.kappa_lo && options.seeds >= 2)) {
    throw Error(ErrorKind::InvalidConfig, "invalid kappa search range");
  }
  const Pattern data = normalized_max_one(pattern);
  double mean = 0.0;
  for (double v : data.intensities) mean += v;
  mean /= static_cast<double>(count);
  double variance = 0.0;
  for (double v : data.intensities) variance += (v - mean) * (v - mean);
  variance /= static_cast<double>(count);
  if (variance < options.min_variance) {
    throw Error(ErrorKind::NoFringes, "pattern variance " + std::to_string(variance) +
                                          " leaves kappa unidentifiable");
  }

  SlitExperiment exp = geometry;
  exp.screen_points = pattern.screen_points;
  const auto invariants = slit_invariants(exp);

  // Above the fold point π/s, where s is the largest change of any pairwise
  // phase difference between neighbouring screen points, the sampled pattern
  // repeats exactly and κ cannot be identified.
  double step = 0.0;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const auto& a = invariants[i].phis;
    const auto& b = invariants[i + 1].phis;
    for (std::size_t j = 0; j < a.size(); ++j) {
      for (std::size_t k = j + 1; k < a.size(); ++k) {
        step = std::max(step, std::abs((b[j] - b[k]) - (a[j] - a[k])));
      }
    }
  }
  double kappa_hi = options.kappa_hi;
  if (step > 0.0) kappa_hi = std::min(kappa_hi, std::numbers::pi / step);
  if (kappa_hi <= options.kappa_lo) {
    throw Error(ErrorKind::InsufficientSamples, "screen sampling too coarse: kappa above " +
                                                    std::to_string(kappa_hi) + " is aliased");
  }

  std::vector<double> model(count);
  auto objective = [&](double kappa) {
    double peak = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      model[i] = pn_amplitude(invariants[i].phis, kappa);
      peak = std::max(peak, model[i]);
    }
    if (!(peak > 0.0)) return std::numeric_limits<double>::infinity();
    double sse = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double r = data.intensities[i] - model[i] / peak;
      sse += r * r;
    }
    return sse;
  };

  const std::size_t seeds = options.seeds;
  const double log_lo = std::log(options.kappa_lo);
  const double log_step = (std::log(kappa_hi) - log_lo) / static_cast<double>(seeds - 1);
  std::vector<double> grid(seeds);
  std::vector<double> values(seeds);
  for (std::size_t i = 0; i < seeds; ++i) {
    grid[i] = std::exp(log_lo + log_step * static_cast<double>(i));
    values[i] = objective(grid[i]);
  }
  grid.front() = options.kappa_lo;
  grid.back() = kappa_hi;

  double best_kappa = grid.front();
  double best_value = std::numeric_limits<double>::infinity();
  auto consider = [&](double kappa, double value) {
    if (!std::isfinite(best_value)) {
      if (std::isfinite(value)) {
        best_kappa = kappa;
        best_value = value;
      }
      return;
    }
    const double slack = 1e-12 * std::max(1.0, best_value);
    if (value < best_value - slack || (std::abs(value - best_value) <= slack && kappa < best_kappa)) {
      best_kappa = kappa;
      best_value = value;
    }
  };
  for (std::size_t i = 0; i < seeds; ++i) {
    const bool left_ok = i == 0 || values[i] <= values[i - 1];
    const bool right_ok = i + 1 == seeds || values[i] <= values[i + 1];
    if (!(left_ok && right_ok)) continue;
    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[i + 1 == seeds ? i : i + 1];
    const double kappa = detail::golden_section(objective, lo, hi, 120);
    const double value = objective(kappa);
    // The seed itself may beat the refinement when the basin is flat.
    if (value <= values[i]) {
      consider(kappa, value);
    } else {
      consider(grid[i], values[i]);
    }
  }

  KappaFit fit;
  fit.kappa = std::abs(best_kappa);
  fit.rms = std::sqrt(best_value / static_cast<double>(count));
  if (fit.rms > options.max_rms) {
    throw Error(ErrorKind::PoorFit, "rms residual " + std::to_string(fit.rms) +
                                        " exceeds " + std::to_string(options.max_rms) +
                                        " of the pattern maximum");
  }
  return fit;
}

}  // namespace pathprob
