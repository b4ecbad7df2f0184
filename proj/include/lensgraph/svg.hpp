#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <unordered_map>

#include "lensgraph/canonical_json.hpp"
#include "lensgraph/scene.hpp"

namespace lensgraph {

namespace detail {

struct Rgb {
  double r, g, b;
};

inline std::string ramp_color(Rgb light, Rgb dark, double t) {
  t = std::clamp(t, 0.0, 1.0);
  const auto mix = [&](double a, double b) { return static_cast<int>(std::lround(a + (b - a) * t)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(light.r, dark.r), mix(light.g, dark.g), mix(light.b, dark.b));
  return buf;
}

inline std::string blues(double t) { return ramp_color({198, 219, 239}, {8, 48, 107}, t); }
inline std::string greens(double t) { return ramp_color({199, 233, 192}, {0, 68, 27}, t); }

inline std::string svg_num(double v) { return format_fixed(v, 3); }

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline double svg_node_radius(const SceneNode& n) { return 3.0 + 5.0 * n.size_scalar; }
inline double svg_edge_width(const SceneEdge& e) { return 0.5 + 2.5 * e.width_scalar; }

/// Standalone SVG 1.1 still of a snapshot. Element order is edges, guide
/// circles, lens ring, nodes.
inline std::string export_svg(const SceneSnapshot& s) {
  using detail::svg_num;
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
  bool any = false;
  const auto extend = [&](double x0, double y0, double x1, double y1) {
    if (!any) {
      min_x = x0, min_y = y0, max_x = x1, max_y = y1;
      any = true;
      return;
    }
    min_x = std::min(min_x, x0);
    min_y = std::min(min_y, y0);
    max_x = std::max(max_x, x1);
    max_y = std::max(max_y, y1);
  };
  for (const auto& n : s.nodes) {
    const double r = svg_node_radius(n);
    extend(n.position.x - r, n.position.y - r, n.position.x + r, n.position.y + r);
  }
  if (s.lens) {
    const auto& l = *s.lens;
    extend(l.center.x - l.radius, l.center.y - l.radius, l.center.x + l.radius, l.center.y + l.radius);
  }
  constexpr double margin = 20.0;
  min_x -= margin;
  min_y -= margin;
  const double width = (max_x + margin) - min_x;
  const double height = (max_y + margin) - min_y;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + svg_num(min_x) + " " +
         svg_num(min_y) + " " + svg_num(width) + " " + svg_num(height) + "\" width=\"" + svg_num(width) +
         "\" height=\"" + svg_num(height) + "\">\n";
  out += "<rect x=\"" + svg_num(min_x) + "\" y=\"" + svg_num(min_y) + "\" width=\"" + svg_num(width) +
         "\" height=\"" + svg_num(height) + "\" fill=\"#ffffff\"/>\n";

  std::unordered_map<std::string, Vec2> where;
  for (const auto& n : s.nodes) where.emplace(n.id, n.position);

  out += "<g class=\"edges\" stroke=\"#8c8c8c\" stroke-opacity=\"0.6\">\n";
  for (const auto& e : s.edges) {
    if (!e.visible) continue;
    const Vec2 a = where.at(e.source);
    const Vec2 b = where.at(e.target);
    out += "<line class=\"edge\" x1=\"" + svg_num(a.x) + "\" y1=\"" + svg_num(a.y) + "\" x2=\"" + svg_num(b.x) +
           "\" y2=\"" + svg_num(b.y) + "\" stroke-width=\"" + svg_num(svg_edge_width(e)) + "\"/>\n";
  }
  out += "</g>\n";

  if (s.lens) {
    const auto& l = *s.lens;
    out += "<g class=\"guides\" fill=\"none\" stroke=\"#41ab5d\" stroke-width=\"0.75\" stroke-dasharray=\"4 3\">\n";
    for (const double r : l.guide_radii) {
      out += "<circle class=\"guide\" cx=\"" + svg_num(l.center.x) + "\" cy=\"" + svg_num(l.center.y) + "\" r=\"" +
             svg_num(r) + "\"/>\n";
    }
    out += "</g>\n";
    out += "<circle class=\"lens\" cx=\"" + svg_num(l.center.x) + "\" cy=\"" + svg_num(l.center.y) + "\" r=\"" +
           svg_num(l.radius) + "\" fill=\"#f7fcf5\" fill-opacity=\"0.35\" stroke=\"#238b45\" stroke-width=\"2\"/>\n";
  }

  out += "<g class=\"nodes\">\n";
  for (const auto& n : s.nodes) {
    const bool lens_node = n.role != Role::Context;
    const std::string fill =
        lens_node ? detail::greens(n.similarity_scalar.value_or(0.0)) : detail::blues(n.size_scalar);
    std::string stroke = "stroke=\"#ffffff\" stroke-width=\"0.75\"";
    if (n.role == Role::Focus) stroke = "stroke=\"#000000\" stroke-width=\"2\"";
    else if (lens_node && n.missing) stroke = "stroke=\"#969696\" stroke-width=\"1\" stroke-dasharray=\"2 2\"";
    out += "<circle class=\"node " + std::string(to_string(n.role)) + "\" data-id=\"" + detail::xml_escape(n.id) +
           "\" cx=\"" + svg_num(n.position.x) + "\" cy=\"" + svg_num(n.position.y) + "\" r=\"" +
           svg_num(svg_node_radius(n)) + "\" fill=\"" + fill + "\" " + stroke + "/>\n";
  }
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace lensgraph
