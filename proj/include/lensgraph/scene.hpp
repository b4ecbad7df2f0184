#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lensgraph/canonical_json.hpp"
#include "lensgraph/error.hpp"
#include "lensgraph/geometry.hpp"
#include "lensgraph/lens.hpp"

namespace lensgraph {

struct SceneNode {
  std::string id;
  Vec2 position;
  double size_scalar = 0.0;  // degree / max degree
  Role role = Role::Context;
  std::optional<double> similarity_scalar;
  bool missing = false;  // lacks a selected attribute value

  friend bool operator==(const SceneNode&, const SceneNode&) = default;
};

struct SceneEdge {
  std::string source;
  std::string target;
  double width_scalar = 0.0;  // weight / max weight
  bool visible = true;

  friend bool operator==(const SceneEdge&, const SceneEdge&) = default;
};

struct SceneLens {
  Vec2 center;
  double radius = 0.0;
  std::vector<double> guide_radii;
  std::string focus_id;

  friend bool operator==(const SceneLens&, const SceneLens&) = default;
};

/// One rendered frame. Immutable once taken; safe to hand to any reader.
struct SceneSnapshot {
  long long frame = 0;
  std::vector<SceneNode> nodes;
  std::vector<SceneEdge> edges;
  std::optional<SceneLens> lens;
  bool transition_settled = true;

  static constexpr const char* kContextColormap = "blues";
  static constexpr const char* kLensColormap = "greens";

  std::size_t visible_edge_count() const {
    std::size_t c = 0;
    for (const auto& e : edges) c += e.visible ? 1 : 0;
    return c;
  }

  friend bool operator==(const SceneSnapshot&, const SceneSnapshot&) = default;
};

namespace detail {

inline nlohmann::json point_json(Vec2 p) { return nlohmann::json::array({p.x, p.y}); }

inline Vec2 point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("point must be a [x, y] array");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace detail

inline nlohmann::json scene_to_json(const SceneSnapshot& s) {
  nlohmann::json j;
  j["frame"] = s.frame;
  j["colormaps"] = {{"context", SceneSnapshot::kContextColormap}, {"lens", SceneSnapshot::kLensColormap}};
  j["transitionSettled"] = s.transition_settled;
  auto nodes = nlohmann::json::array();
  for (const auto& n : s.nodes) {
    nlohmann::json jn{{"id", n.id},
                      {"x", n.position.x},
                      {"y", n.position.y},
                      {"sizeScalar", n.size_scalar},
                      {"role", std::string(to_string(n.role))},
                      {"missing", n.missing}};
    if (n.similarity_scalar) jn["similarityScalar"] = *n.similarity_scalar;
    nodes.push_back(std::move(jn));
  }
  j["nodes"] = std::move(nodes);
  auto edges = nlohmann::json::array();
  for (const auto& e : s.edges) {
    edges.push_back({{"source", e.source}, {"target", e.target}, {"widthScalar", e.width_scalar}, {"visible", e.visible}});
  }
  j["edges"] = std::move(edges);
  if (s.lens) {
    j["lens"] = {{"center", detail::point_json(s.lens->center)},
                 {"R", s.lens->radius},
                 {"guideRadii", s.lens->guide_radii},
                 {"focusId", s.lens->focus_id}};
  }
  return j;
}

inline SceneSnapshot scene_from_json(const nlohmann::json& j) {
  try {
    SceneSnapshot s;
    s.frame = j.at("frame").get<long long>();
    s.transition_settled = j.at("transitionSettled").get<bool>();
    for (const auto& jn : j.at("nodes")) {
      SceneNode n;
      n.id = jn.at("id").get<std::string>();
      n.position = {jn.at("x").get<double>(), jn.at("y").get<double>()};
      n.size_scalar = jn.at("sizeScalar").get<double>();
      const auto role = parse_role(jn.at("role").get<std::string>());
      if (!role) throw ParseError("unknown node role");
      n.role = *role;
      n.missing = jn.at("missing").get<bool>();
      if (jn.contains("similarityScalar")) n.similarity_scalar = jn.at("similarityScalar").get<double>();
      s.nodes.push_back(std::move(n));
    }
    for (const auto& je : j.at("edges")) {
      s.edges.push_back({je.at("source").get<std::string>(), je.at("target").get<std::string>(),
                         je.at("widthScalar").get<double>(), je.at("visible").get<bool>()});
    }
    if (j.contains("lens")) {
      const auto& jl = j.at("lens");
      SceneLens lens;
      lens.center = detail::point_from_json(jl.at("center"));
      lens.radius = jl.at("R").get<double>();
      lens.guide_radii = jl.at("guideRadii").get<std::vector<double>>();
      lens.focus_id = jl.at("focusId").get<std::string>();
      s.lens = std::move(lens);
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed scene-json: ") + e.what());
  }
}

/// Canonical scene-json text (no trailing newline).
inline std::string serialize_scene(const SceneSnapshot& s) { return canonical_dump(scene_to_json(s)); }

inline SceneSnapshot parse_scene(std::string_view text) {
  try {
    return scene_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed scene-json: ") + e.what());
  }
}

}  // namespace lensgraph
