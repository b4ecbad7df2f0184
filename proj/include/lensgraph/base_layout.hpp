#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <thread>
#include <vector>

#include "lensgraph/geometry.hpp"
#include "lensgraph/graph.hpp"

namespace lensgraph {

/// Fruchterman-Reingold style spring embedder with a linear cooling schedule.
struct LayoutParams {
  double ideal_edge_length = 30.0;
  double repulsion_strength = 1.0;
  int cooling_steps = 300;
  std::uint64_t seed = 1;
  /// Worker threads for force accumulation; 0 or 1 runs serially. The result
  /// is identical either way since each node sums its own forces in id order.
  unsigned threads = 0;
};

struct LayoutState {
  std::vector<Vec2> positions;   // node indexed
  std::vector<Vec2> velocities;  // last applied displacement per tick
  int tick = 0;

  friend bool operator==(const LayoutState&, const LayoutState&) = default;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> adjacency(const MultivariateGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.node_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.endpoints(e);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

/// Unit vector pushing node `self` away from a coincident node `other`.
inline Vec2 coincident_direction(const MultivariateGraph& g, std::size_t self, std::size_t other) {
  const bool self_first = self < other;
  const auto& a = g.nodes()[self_first ? self : other].id;
  const auto& b = g.nodes()[self_first ? other : self].id;
  std::string key = a;
  key.push_back('\0');
  key += b;
  const double angle = hashed_angle(key);
  const Vec2 u{std::cos(angle), std::sin(angle)};
  return self_first ? u : u * -1.0;
}

inline Vec2 centroid(const std::vector<Vec2>& ps) {
  Vec2 c;
  for (const auto& p : ps) c += p;
  if (!ps.empty()) c = c * (1.0 / static_cast<double>(ps.size()));
  return c;
}

inline void recenter(std::vector<Vec2>& ps) {
  const Vec2 c = centroid(ps);
  for (auto& p : ps) p -= c;
}

}  // namespace detail

inline double initial_temperature(const MultivariateGraph& g, const LayoutParams& params) {
  return 0.1 * params.ideal_edge_length * std::sqrt(static_cast<double>(std::max<std::size_t>(g.node_count(), 1)));
}

/// T(k) = T0 * (1 - k / coolingSteps), zero once the schedule is exhausted.
inline double temperature(const MultivariateGraph& g, const LayoutParams& params, int tick) {
  if (params.cooling_steps <= 0 || tick >= params.cooling_steps) return 0.0;
  return initial_temperature(g, params) *
         (1.0 - static_cast<double>(tick) / static_cast<double>(params.cooling_steps));
}

/// Net force on every node: pairwise repulsion k^2/d plus attraction d^2/k
/// along edges. Edge weight deliberately plays no part.
inline std::vector<Vec2> compute_forces(const std::vector<Vec2>& positions, const MultivariateGraph& g,
                                        const LayoutParams& params) {
  const std::size_t n = g.node_count();
  const double k = params.ideal_edge_length;
  const double k2 = params.repulsion_strength * k * k;
  const double min_dist = 0.01 * k;
  const auto adj = detail::adjacency(g);

  std::vector<Vec2> forces(n);
  const auto accumulate = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Vec2 f;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const Vec2 delta = positions[i] - positions[j];
        const double d = length(delta);
        const Vec2 dir = d > 0.0 ? delta * (1.0 / d) : detail::coincident_direction(g, i, j);
        f += dir * (k2 / std::max(d, min_dist));
      }
      for (const std::size_t j : adj[i]) {
        const Vec2 delta = positions[j] - positions[i];
        const double d = length(delta);
        if (d > 0.0) f += delta * (d / k);  // unit(delta) * d^2 / k
      }
      forces[i] = f;
    }
  };

  const unsigned threads = std::min<unsigned>(params.threads, static_cast<unsigned>(n));
  if (threads <= 1) {
    accumulate(0, n);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
      workers.emplace_back(accumulate, begin, std::min(n, begin + chunk));
    }
  }
  return forces;
}

/// Seeds positions uniformly on a disc of radius idealEdgeLength * sqrt(n),
/// centered on the origin.
inline LayoutState init_layout(const MultivariateGraph& g, const LayoutParams& params) {
  const std::size_t n = g.node_count();
  LayoutState s;
  s.positions.resize(n);
  s.velocities.assign(n, Vec2{});
  Rng rng(params.seed);
  const double radius = params.ideal_edge_length * std::sqrt(static_cast<double>(n));
  for (auto& p : s.positions) {
    const double r = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    p = {r * std::cos(theta), r * std::sin(theta)};
  }
  detail::recenter(s.positions);
  return s;
}

/// One cooling tick: displacement per node is the net force clipped to the
/// current temperature.
inline LayoutState step_layout(LayoutState state, const MultivariateGraph& g, const LayoutParams& params) {
  const double t = temperature(g, params, state.tick);
  const auto forces = compute_forces(state.positions, g, params);
  for (std::size_t i = 0; i < forces.size(); ++i) {
    Vec2 disp = forces[i];
    const double mag = length(disp);
    if (!(mag > 0.0) || t <= 0.0) {
      disp = {};
    } else if (mag > t) {
      disp = disp * (t / mag);
    }
    state.positions[i] += disp;
    state.velocities[i] = disp;
  }
  ++state.tick;
  return state;
}

inline LayoutState run_layout(const MultivariateGraph& g, const LayoutParams& params) {
  LayoutState s = init_layout(g, params);
  for (int i = 0; i < params.cooling_steps; ++i) s = step_layout(std::move(s), g, params);
  detail::recenter(s.positions);
  return s;
}

}  // namespace lensgraph
