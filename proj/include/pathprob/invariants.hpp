#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pathprob {

/// Piecewise-linear worldline x(t) in one spatial dimension, natural units
/// (c = 1). Nodes lie on a strictly increasing time grid.
class Trajectory {
 public:
  /// Throws DegenerateGrid for fewer than two nodes, a length mismatch, or a
  /// time grid that is not strictly increasing.
  Trajectory(std::vector<double> times, std::vector<double> positions);

  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> positions() const noexcept { return positions_; }
  std::size_t node_count() const noexcept { return times_.size(); }
  std::size_t segment_count() const noexcept { return times_.size() - 1; }

  double start_time() const noexcept { return times_.front(); }
  double end_time() const noexcept { return times_.back(); }

 private:
  std::vector<double> times_;
  std::vector<double> positions_;
};

/// Joins two trajectories sharing a junction node (last node of `first`
/// equal to the first node of `second`). Throws BadInterval otherwise.
Trajectory concatenate(const Trajectory& first, const Trajectory& second);

/// Splits at interior node `node` (both halves keep the node).
std::pair<Trajectory, Trajectory> split_at(const Trajectory& traj, std::size_t node);

/// Uniform grid with `segments + 1` nodes on the straight line between two
/// events. Throws BadInterval when t1 <= t0 or segments == 0.
Trajectory straight_line(double t0, double x0, double t1, double x1, std::size_t segments);

/// The ordered path invariants {Φ_i} fed to every P^n, plus the coupling κ.
struct InvariantVector {
  std::vector<double> phis;
  double kappa = 1.0;

  std::size_t size() const noexcept { return phis.size(); }
};

enum class InvariantMode { RelativisticProperTime, NonrelativisticAction };

struct ParticleParams {
  double mass = 1.0;
  InvariantMode mode = InvariantMode::NonrelativisticAction;
  // V(x); empty means V ≡ 0. Only read in action mode.
  std::function<double(double)> potential;
};

/// mass · Σ Δt·√(1 − v²) with constant velocity on each segment.
/// Throws SuperluminalSegment if any |Δx/Δt| >= 1.
double proper_time_invariant(const Trajectory& traj, const ParticleParams& params);

/// Φ = −S = −Σ Δt·(½·m·v² − V(x_mid)), midpoint rule for the potential.
double action_invariant(const Trajectory& traj, const ParticleParams& params);

/// Dispatches on params.mode.
double path_invariant(const Trajectory& traj, const ParticleParams& params);

}  // namespace pathprob
