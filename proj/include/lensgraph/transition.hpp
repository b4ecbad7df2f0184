#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "lensgraph/geometry.hpp"

namespace lensgraph {

/// Per-node critically damped spring toward a target, integrated with
/// semi-implicit Euler at a fixed step. Once every node is within tolerance
/// the state snaps onto the targets and reports settled.
struct TransitionState {
  std::vector<Vec2> current;
  std::vector<Vec2> velocities;
  std::vector<Vec2> targets;
  double stiffness = 40.0;
  double dt = 1.0 / 60.0;
  bool settled = false;
  int steps = 0;

  static constexpr double kSettleDistance = 1e-3;  // world units
  static constexpr double kSettleSpeed = 1e-3;     // world units per second

  double damping() const { return 2.0 * std::sqrt(stiffness); }
};

namespace detail {

inline void settle_if_converged(TransitionState& ts) {
  double max_dist = 0.0;
  double max_speed = 0.0;
  for (std::size_t i = 0; i < ts.current.size(); ++i) {
    max_dist = std::max(max_dist, distance(ts.current[i], ts.targets[i]));
    max_speed = std::max(max_speed, length(ts.velocities[i]));
  }
  if (max_dist < TransitionState::kSettleDistance && max_speed < TransitionState::kSettleSpeed) {
    ts.current = ts.targets;
    std::fill(ts.velocities.begin(), ts.velocities.end(), Vec2{});
    ts.settled = true;
  }
}

}  // namespace detail

/// Starts a transition. `velocities` may be empty (start from rest) or carry
/// the motion of an interrupted transition.
inline TransitionState begin_transition(std::vector<Vec2> from, std::vector<Vec2> to, double stiffness,
                                        std::vector<Vec2> velocities = {}, double dt = 1.0 / 60.0) {
  TransitionState ts;
  ts.current = std::move(from);
  ts.targets = std::move(to);
  ts.velocities = std::move(velocities);
  if (ts.velocities.size() != ts.current.size()) ts.velocities.assign(ts.current.size(), Vec2{});
  ts.stiffness = stiffness;
  ts.dt = dt;
  detail::settle_if_converged(ts);
  return ts;
}

inline TransitionState step_transition(TransitionState ts) {
  if (ts.settled) return ts;
  const double k = ts.stiffness;
  const double c = ts.damping();
  for (std::size_t i = 0; i < ts.current.size(); ++i) {
    const Vec2 accel = (ts.current[i] - ts.targets[i]) * -k - ts.velocities[i] * c;
    ts.velocities[i] += accel * ts.dt;
    ts.current[i] += ts.velocities[i] * ts.dt;
  }
  ++ts.steps;
  detail::settle_if_converged(ts);
  return ts;
}

}  // namespace lensgraph
