#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "lensgraph/base_layout.hpp"
#include "lensgraph/geometry.hpp"
#include "lensgraph/graph.hpp"
#include "lensgraph/similarity.hpp"

namespace lensgraph {

// Radial guide modes.
struct GuidesOff {
  friend bool operator==(GuidesOff, GuidesOff) = default;
};
struct GuidesEquidistant {
  int count = 4;
  friend bool operator==(GuidesEquidistant, GuidesEquidistant) = default;
};
struct GuidesPerNode {
  friend bool operator==(GuidesPerNode, GuidesPerNode) = default;
};
struct GuidesDynamic {
  Vec2 cursor;
  bool snap = true;
  friend bool operator==(GuidesDynamic, GuidesDynamic) = default;
};
using GuideMode = std::variant<GuidesOff, GuidesEquidistant, GuidesPerNode, GuidesDynamic>;

enum class EdgeFilter { Off, Incident, Interior };

inline std::string_view to_string(EdgeFilter f) {
  switch (f) {
    case EdgeFilter::Off: return "off";
    case EdgeFilter::Incident: return "incident";
    case EdgeFilter::Interior: return "interior";
  }
  return "off";
}

inline std::optional<EdgeFilter> parse_edge_filter(std::string_view s) {
  if (s == "off") return EdgeFilter::Off;
  if (s == "incident") return EdgeFilter::Incident;
  if (s == "interior") return EdgeFilter::Interior;
  return std::nullopt;
}

enum class Role { Focus, InLens, Pushed, Context };

inline std::string_view to_string(Role r) {
  switch (r) {
    case Role::Focus: return "focus";
    case Role::InLens: return "in-lens";
    case Role::Pushed: return "pushed";
    case Role::Context: return "context";
  }
  return "context";
}

inline std::optional<Role> parse_role(std::string_view s) {
  if (s == "focus") return Role::Focus;
  if (s == "in-lens") return Role::InLens;
  if (s == "pushed") return Role::Pushed;
  if (s == "context") return Role::Context;
  return std::nullopt;
}

struct LensConfig {
  Vec2 center;
  double radius = 200.0;
  SimilarityConfig similarity;
  GuideMode guides = GuidesOff{};
  EdgeFilter edge_filter = EdgeFilter::Off;
  /// Pushed nodes land at radius * (1 + push_margin).
  double push_margin = 0.08;
  /// Minimum distance between moved nodes sought by overlap resolution.
  double node_separation = 10.0;

  friend bool operator==(const LensConfig&, const LensConfig&) = default;
};

struct LensLayout {
  std::size_t focus = 0;
  Vec2 center;
  std::vector<Vec2> targets;
  std::vector<Role> roles;
  /// Distance of each target from the lens center, fixed before overlap
  /// resolution. Only angles are adjusted afterwards.
  std::vector<double> radii;
  std::vector<double> angles;
  std::vector<double> guide_radii;
  std::vector<std::size_t> visible_edges;
  std::vector<std::optional<double>> similarity_scalars;  // nullopt for context nodes
  bool overlap_resolved = true;
  int overlap_sweeps = 0;
};

/// Node nearest to `center`; ties go to the smallest id (lowest index).
inline std::size_t pick_focus(const std::vector<Vec2>& positions, Vec2 center) {
  if (positions.empty()) throw DataError("cannot pick a focus node in an empty graph");
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Vec2 d = positions[i] - center;
    const double d2 = d.x * d.x + d.y * d.y;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

/// r(s) = R (1 - s) / (1 - t): the threshold maps to the lens border and
/// perfect similarity to the center.
inline double radius_for_similarity(double s, double threshold, double lens_radius) {
  if (s < threshold) throw DataError("similarity below threshold has no in-lens radius");
  if (threshold >= 1.0) return 0.0;
  const double r = lens_radius * ((1.0 - std::min(s, 1.0)) / (1.0 - threshold));
  return std::clamp(r, 0.0, lens_radius);
}

inline bool inside_lens(Vec2 p, Vec2 center, double radius) { return distance(p, center) <= radius; }

inline std::vector<std::size_t> compute_edge_visibility(const MultivariateGraph& g,
                                                        const std::vector<Vec2>& positions,
                                                        Vec2 center, double radius, EdgeFilter filter) {
  std::vector<std::size_t> visible;
  visible.reserve(g.edge_count());
  if (filter == EdgeFilter::Off) {
    for (std::size_t e = 0; e < g.edge_count(); ++e) visible.push_back(e);
    return visible;
  }
  std::vector<char> inside(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) inside[i] = inside_lens(positions[i], center, radius);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.endpoints(e);
    const bool keep = filter == EdgeFilter::Incident ? (inside[a] || inside[b]) : (inside[a] && inside[b]);
    if (keep) visible.push_back(e);
  }
  return visible;
}

inline std::vector<std::size_t> compute_edge_visibility(const MultivariateGraph& g,
                                                        const std::vector<Vec2>& positions,
                                                        const LensConfig& lens) {
  return compute_edge_visibility(g, positions, lens.center, lens.radius, lens.edge_filter);
}

inline std::vector<double> compute_radial_guides(const LensConfig& lens, const LensLayout& layout) {
  const double R = lens.radius;
  std::vector<double> node_radii;
  for (std::size_t i = 0; i < layout.roles.size(); ++i) {
    if (layout.roles[i] == Role::InLens && layout.radii[i] > 0.0) node_radii.push_back(layout.radii[i]);
  }
  std::sort(node_radii.begin(), node_radii.end());

  return std::visit(
      [&](const auto& mode) -> std::vector<double> {
        using M = std::decay_t<decltype(mode)>;
        std::vector<double> out;
        if constexpr (std::is_same_v<M, GuidesEquidistant>) {
          for (int i = 1; i <= mode.count; ++i) out.push_back(R * i / mode.count);
        } else if constexpr (std::is_same_v<M, GuidesPerNode>) {
          const double window = R / 100.0;
          for (const double r : node_radii) {
            if (out.empty() || r - out.back() > window) out.push_back(r);
          }
        } else if constexpr (std::is_same_v<M, GuidesDynamic>) {
          double r = std::clamp(distance(mode.cursor, lens.center), 0.0, R);
          if (mode.snap && !node_radii.empty()) {
            const auto nearest = std::min_element(node_radii.begin(), node_radii.end(),
                                                  [&](double a, double b) { return std::abs(a - r) < std::abs(b - r); });
            if (std::abs(*nearest - r) <= R / 20.0) r = *nearest;
          }
          if (r > 0.0) out.push_back(r);
        }
        return out;
      },
      lens.guides);
}

/// Similarity shown as color on every node the lens touches; undefined
/// scores floor at zero and context nodes get nothing.
inline std::vector<std::optional<double>> similarity_color_scalars(const SimilarityResult& sim,
                                                                   const std::vector<Role>& roles) {
  std::vector<std::optional<double>> out(roles.size());
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (roles[i] == Role::Context) continue;
    out[i] = sim.scores[i].value_or(0.0);
  }
  return out;
}

namespace detail {

inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

/// Pairwise angular repulsion at fixed radius, Gauss-Seidel over node index
/// order. Returns (resolved, sweeps used).
inline std::pair<bool, int> resolve_angular_overlaps(const std::vector<std::size_t>& moved,
                                                     const std::vector<double>& radii,
                                                     std::vector<double>& angles, Vec2 center,
                                                     double separation, int max_sweeps = 50) {
  if (separation <= 0.0) return {true, 0};
  const auto pos = [&](std::size_t i) { return from_polar(center, radii[i], angles[i]); };
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool overlap = false;
    for (std::size_t a = 0; a < moved.size(); ++a) {
      for (std::size_t b = a + 1; b < moved.size(); ++b) {
        const std::size_t i = moved[a];
        const std::size_t j = moved[b];
        if (std::abs(radii[i] - radii[j]) >= separation) continue;
        const double d = distance(pos(i), pos(j));
        if (d >= separation) continue;
        overlap = true;
        double delta = wrap_angle(angles[j] - angles[i]);
        const double sign = delta < 0.0 ? -1.0 : 1.0;
        const double gap = 0.5 * (separation - d) * 1.05;
        if (radii[i] > 0.0) angles[i] = wrap_angle(angles[i] - sign * gap / radii[i]);
        if (radii[j] > 0.0) angles[j] = wrap_angle(angles[j] + sign * gap / radii[j]);
      }
    }
    if (!overlap) return {true, sweep};
  }
  // Final check after the last sweep.
  for (std::size_t a = 0; a < moved.size(); ++a) {
    for (std::size_t b = a + 1; b < moved.size(); ++b) {
      if (distance(pos(moved[a]), pos(moved[b])) < separation) return {false, max_sweeps};
    }
  }
  return {true, max_sweeps};
}

}  // namespace detail

/// Places the focus at the lens center, qualifying nodes at r(s) along
/// their original bearing, and non-qualifying nodes that sit inside the disc
/// just beyond the border. Every other node keeps its base position.
inline LensLayout compute_lens_layout(const LayoutState& base, const MultivariateGraph& g,
                                      const LensConfig& lens, const SimilarityResult& sim) {
  const std::size_t n = g.node_count();
  if (base.positions.size() != n || sim.scores.size() != n) {
    throw DataError("lens layout: layout/similarity do not match the graph");
  }
  if (!(lens.radius > 0.0)) throw DataError("lens radius must be positive");

  LensLayout out;
  out.focus = sim.focus;
  out.center = lens.center;
  out.targets = base.positions;
  out.roles.assign(n, Role::Context);
  out.radii.assign(n, 0.0);
  out.angles.assign(n, 0.0);

  const double R = lens.radius;
  std::vector<std::size_t> moved;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 offset = base.positions[i] - lens.center;
    const double dist = length(offset);
    const double bearing = dist > 0.0 ? std::atan2(offset.y, offset.x) : hashed_angle(g.nodes()[i].id);
    out.radii[i] = dist;
    out.angles[i] = bearing;
    if (i == sim.focus) {
      out.roles[i] = Role::Focus;
      out.radii[i] = 0.0;
    } else if (sim.is_qualifying(i)) {
      out.roles[i] = Role::InLens;
      out.radii[i] = radius_for_similarity(*sim.scores[i], sim.threshold, R);
      moved.push_back(i);
    } else if (dist <= R) {
      out.roles[i] = Role::Pushed;
      out.radii[i] = R * (1.0 + lens.push_margin);
      moved.push_back(i);
    }
  }

  const auto [resolved, sweeps] =
      detail::resolve_angular_overlaps(moved, out.radii, out.angles, lens.center, lens.node_separation);
  out.overlap_resolved = resolved;
  out.overlap_sweeps = sweeps;

  for (std::size_t i = 0; i < n; ++i) {
    switch (out.roles[i]) {
      case Role::Focus: out.targets[i] = lens.center; break;
      case Role::InLens:
      case Role::Pushed: out.targets[i] = from_polar(lens.center, out.radii[i], out.angles[i]); break;
      case Role::Context: break;
    }
  }

  out.guide_radii = compute_radial_guides(lens, out);
  out.visible_edges = compute_edge_visibility(g, out.targets, lens);
  out.similarity_scalars = similarity_color_scalars(sim, out.roles);
  return out;
}

}  // namespace lensgraph
