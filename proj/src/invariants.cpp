#include "pathprob/invariants.hpp"

#include <cmath>
#include <string>

#include "pathprob/error.hpp"

namespace pathprob {

Trajectory::Trajectory(std::vector<double> times, std::vector<double> positions)
    : times_(std::move(times)), positions_(std::move(positions)) {
  if (times_.size() < 2) {
    throw Error(ErrorKind::DegenerateGrid, "trajectory needs at least 2 nodes");
  }
  if (positions_.size() != times_.size()) {
    throw Error(ErrorKind::DegenerateGrid, "positions and times differ in length");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw Error(ErrorKind::DegenerateGrid,
                  "time grid not strictly increasing at node " + std::to_string(i));
    }
  }
}

Trajectory concatenate(const Trajectory& first, const Trajectory& second) {
  if (first.end_time() != second.start_time() ||
      first.positions().back() != second.positions().front()) {
    throw Error(ErrorKind::BadInterval, "trajectories do not share a junction node");
  }
  std::vector<double> t(first.times().begin(), first.times().end());
  std::vector<double> x(first.positions().begin(), first.positions().end());
  t.insert(t.end(), second.times().begin() + 1, second.times().end());
  x.insert(x.end(), second.positions().begin() + 1, second.positions().end());
  return Trajectory(std::move(t), std::move(x));
}

std::pair<Trajectory, Trajectory> split_at(const Trajectory& traj, std::size_t node) {
  if (node == 0 || node + 1 >= traj.node_count()) {
    throw Error(ErrorKind::BadInterval, "split node must be interior");
  }
  auto t = traj.times();
  auto x = traj.positions();
  Trajectory head({t.begin(), t.begin() + node + 1}, {x.begin(), x.begin() + node + 1});
  Trajectory tail({t.begin() + node, t.end()}, {x.begin() + node, x.end()});
  return {std::move(head), std::move(tail)};
}

Trajectory straight_line(double t0, double x0, double t1, double x1, std::size_t segments) {
  if (!(t1 > t0)) throw Error(ErrorKind::BadInterval, "t1 must exceed t0");
  if (segments == 0) throw Error(ErrorKind::BadInterval, "segments must be >= 1");
  std::vector<double> t(segments + 1);
  std::vector<double> x(segments + 1);
  const double n = static_cast<double>(segments);
  for (std::size_t k = 0; k <= segments; ++k) {
    const double s = static_cast<double>(k) / n;
    t[k] = t0 + (t1 - t0) * s;
    x[k] = x0 + (x1 - x0) * s;
  }
  // Pin the endpoints so chained lines share junction nodes bit-exactly.
  t.back() = t1;
  x.back() = x1;
  return Trajectory(std::move(t), std::move(x));
}

namespace {

void require_positive_mass(const ParticleParams& params) {
  if (!(params.mass > 0.0)) throw Error(ErrorKind::InvalidConfig, "mass must be positive");
}

}  // namespace

double proper_time_invariant(const Trajectory& traj, const ParticleParams& params) {
  require_positive_mass(params);
  auto t = traj.times();
  auto x = traj.positions();
  double sum = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double dt = t[i] - t[i - 1];
    const double dx = std::abs(x[i] - x[i - 1]);
    if (dx >= dt) {
      throw Error(ErrorKind::SuperluminalSegment,
                  "segment " + std::to_string(i - 1) + " has |v| >= 1");
    }
    // Δt·√(1 − v²) = √((Δt − |Δx|)(Δt + |Δx|))
    sum += std::sqrt((dt - dx) * (dt + dx));
  }
  return params.mass * sum;
}

double action_invariant(const Trajectory& traj, const ParticleParams& params) {
  require_positive_mass(params);
  auto t = traj.times();
  auto x = traj.positions();
  double action = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double dt = t[i] - t[i - 1];
    const double dx = x[i] - x[i - 1];
    double lagrangian_dt = 0.5 * params.mass * dx * dx / dt;
    if (params.potential) {
      lagrangian_dt -= dt * params.potential(0.5 * (x[i] + x[i - 1]));
    }
    action += lagrangian_dt;
  }
  return -action;
}

double path_invariant(const Trajectory& traj, const ParticleParams& params) {
  switch (params.mode) {
    case InvariantMode::RelativisticProperTime: return proper_time_invariant(traj, params);
    case InvariantMode::NonrelativisticAction: return action_invariant(traj, params);
  }
  return 0.0;
}

}  // namespace pathprob
