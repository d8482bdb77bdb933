#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pathprob/axioms.hpp"
#include "pathprob/invariants.hpp"

namespace pathprob {

/// A spacetime event (t, x).
struct Event {
  double t = 0.0;
  double x = 0.0;
};

/// Source → slit plane → screen geometry. Each path is the two-leg polyline
/// through one slit centre.
struct SlitExperiment {
  Event source;
  double slit_time = 1.0;
  std::vector<double> slit_positions;
  double screen_time = 2.0;
  std::vector<double> screen_points;
  ParticleParams particle;
  double kappa = 1.0;
};

/// Throws InvalidConfig unless source.t < slit_time < screen_time, there is at
/// least one slit and one screen point, and slit positions are distinct.
void validate(const SlitExperiment& exp);

struct LatticeSpec {
  std::size_t time_slices = 0;
  std::size_t positions_per_slice = 1;
  double x_min = -1.0;
  double x_max = 1.0;
  std::size_t budget = 1'000'000;
};

/// positions_per_slice ^ time_slices, saturating at SIZE_MAX.
std::size_t path_count(const LatticeSpec& lattice);

enum class Normalization { None, MaxOne };

struct Pattern {
  std::vector<double> screen_points;
  std::vector<double> intensities;
  Normalization normalization = Normalization::None;
};

/// Copy scaled so the largest intensity is 1. Throws NoFringes if every
/// intensity is zero.
Pattern normalized_max_one(const Pattern& pattern);

/// Strict interior local maxima (plateaus count once).
std::size_t count_fringes(const Pattern& pattern);

/// Per screen point, the invariants of the source → slit → point paths in
/// slit order (κ copied from the experiment).
std::vector<InvariantVector> slit_invariants(const SlitExperiment& exp);

/// Amplitude rule per screen point. Throws SuperluminalSegment naming the
/// offending slit and screen point in proper-time mode.
Pattern slit_pattern(const SlitExperiment& exp);

/// Node times of the lattice: source.t, the interior slices, target.t.
std::vector<double> lattice_times(const Event& source, const Event& target, const LatticeSpec& lattice);
/// Candidate positions on every interior slice, evenly spaced over
/// [x_min, x_max]; a single position sits at the midpoint.
std::vector<double> lattice_positions(const LatticeSpec& lattice);

/// Visits every lattice path with fixed endpoints in odometer order (last
/// slice fastest). Throws BudgetExceeded and BadInterval.
void for_each_lattice_path(const Event& source, const Event& target, const LatticeSpec& lattice,
                           const std::function<void(const Trajectory&)>& visit);

std::vector<Trajectory> lattice_paths(const Event& source, const Event& target, const LatticeSpec& lattice);

struct PropagatorResult {
  Pattern pattern;
  std::size_t paths_per_target = 0;
  std::size_t skipped_superluminal = 0;  // summed over targets
};

/// |Σ_paths exp(iκΦ)|² for every target over all enumerated lattice paths.
/// Superluminal paths are skipped (and counted) in proper-time mode; a
/// target with no admissible path gets intensity 0.
PropagatorResult lattice_propagator_intensity(const Event& source, std::span<const Event> targets,
                                              const LatticeSpec& lattice, const ParticleParams& particle,
                                              double kappa);

struct LatticeFactorization {
  InvariantVector first_leg;   // source → pinned point
  InvariantVector second_leg;  // pinned point → target
  InvariantVector composite;   // full paths, first-leg index outer
  double composite_intensity = 0.0;
  double product_intensity = 0.0;
  Residual residual;
};

/// Forces every path through lattice node (pinned_slice, pinned_index) and
/// compares the full-path intensity with the product of the two leg
/// intensities.
LatticeFactorization lattice_bayes_factorization(const Event& source, const Event& target,
                                                 const LatticeSpec& lattice, std::size_t pinned_slice,
                                                 std::size_t pinned_index, const ParticleParams& particle,
                                                 double kappa);

struct FitOptions {
  double kappa_lo = 1e-2;
  double kappa_hi = 1e2;
  std::size_t seeds = 1000;
  std::size_t min_points = 20;
  double min_variance = 1e-9;
  double max_rms = 0.1;  // of the normalized pattern maximum
};

struct KappaFit {
  double kappa = 0.0;
  double rms = 0.0;
};

/// Recovers |κ| from a pattern over the experiment's slit geometry (its kappa
/// and screen_points are ignored; the pattern's points are used). Data and
/// model are both max-one normalized. Log-spaced seed scan, then golden-section
/// refinement of every local minimum; ties go to the smaller κ. The scan stops
/// at the sampling fold point π/s (s: largest step of any pairwise phase
/// difference between neighbouring screen points).
/// Throws InsufficientSamples, NoFringes and PoorFit.
KappaFit fit_kappa(const Pattern& pattern, const SlitExperiment& geometry, const FitOptions& options = {});

}  // namespace pathprob
