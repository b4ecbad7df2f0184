#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lensgraph/base_layout.hpp"
#include "lensgraph/canonical_json.hpp"
#include "lensgraph/error.hpp"
#include "lensgraph/lens.hpp"
#include "lensgraph/similarity.hpp"

namespace lensgraph {

// Client -> engine commands. One message per line on the wire:
//   {"type": "SetThreshold", "threshold": 0.5}

namespace cmd {

/// Exactly one source is set: a graph-json document, a node/edge CSV pair,
/// or a seed for the synthetic use-case graph.
struct LoadGraph {
  std::optional<nlohmann::json> graph;
  std::optional<std::string> nodes_csv;
  std::optional<std::string> edges_csv;
  std::optional<std::uint64_t> usecase_seed;
  friend bool operator==(const LoadGraph&, const LoadGraph&) = default;
};
struct RunBaseLayout {
  LayoutParams params;
  friend bool operator==(const RunBaseLayout& a, const RunBaseLayout& b) {
    return a.params.ideal_edge_length == b.params.ideal_edge_length &&
           a.params.repulsion_strength == b.params.repulsion_strength &&
           a.params.cooling_steps == b.params.cooling_steps && a.params.seed == b.params.seed;
  }
};
struct ActivateLens {
  Vec2 center;
  double radius = 200.0;
  friend bool operator==(const ActivateLens&, const ActivateLens&) = default;
};
struct DeactivateLens {
  friend bool operator==(const DeactivateLens&, const DeactivateLens&) = default;
};
struct MoveLens {
  Vec2 center;
  friend bool operator==(const MoveLens&, const MoveLens&) = default;
};
struct ResizeLens {
  double radius = 200.0;
  friend bool operator==(const ResizeLens&, const ResizeLens&) = default;
};
struct SelectFocus {
  std::string id;
  friend bool operator==(const SelectFocus&, const SelectFocus&) = default;
};
struct SetAttributes {
  std::vector<std::string> names;
  friend bool operator==(const SetAttributes&, const SetAttributes&) = default;
};
struct SetMetric {
  Metric metric = Metric::Euclidean;
  friend bool operator==(const SetMetric&, const SetMetric&) = default;
};
struct SetThreshold {
  double threshold = 0.5;
  friend bool operator==(const SetThreshold&, const SetThreshold&) = default;
};
struct SetGuideMode {
  GuideMode mode = GuidesOff{};
  friend bool operator==(const SetGuideMode&, const SetGuideMode&) = default;
};
struct SetEdgeFilter {
  EdgeFilter mode = EdgeFilter::Off;
  friend bool operator==(const SetEdgeFilter&, const SetEdgeFilter&) = default;
};
struct SetCursor {
  Vec2 position;
  friend bool operator==(const SetCursor&, const SetCursor&) = default;
};
struct Tick {
  int count = 1;
  friend bool operator==(const Tick&, const Tick&) = default;
};
struct ExportScene {
  friend bool operator==(const ExportScene&, const ExportScene&) = default;
};
struct ExportSvg {
  friend bool operator==(const ExportSvg&, const ExportSvg&) = default;
};

}  // namespace cmd

using Command = std::variant<cmd::LoadGraph, cmd::RunBaseLayout, cmd::ActivateLens, cmd::DeactivateLens,
                             cmd::MoveLens, cmd::ResizeLens, cmd::SelectFocus, cmd::SetAttributes, cmd::SetMetric,
                             cmd::SetThreshold, cmd::SetGuideMode, cmd::SetEdgeFilter, cmd::SetCursor, cmd::Tick,
                             cmd::ExportScene, cmd::ExportSvg>;

enum class EventType { Frame, Warning, Error };

inline std::string_view to_string(EventType t) {
  switch (t) {
    case EventType::Frame: return "frame";
    case EventType::Warning: return "warning";
    case EventType::Error: return "error";
  }
  return "error";
}

/// Engine -> client message: {"type": "frame"|"warning"|"error", "payload": ...}.
struct Event {
  EventType type = EventType::Frame;
  nlohmann::json payload;

  static Event warning(std::string message) { return {EventType::Warning, {{"message", std::move(message)}}}; }
  static Event error(std::string message) { return {EventType::Error, {{"message", std::move(message)}}}; }
};

inline std::string serialize_event(const Event& e) {
  return canonical_dump({{"type", std::string(to_string(e.type))}, {"payload", e.payload}});
}

inline Event parse_event(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    const auto type = j.at("type").get<std::string>();
    Event e;
    if (type == "frame") e.type = EventType::Frame;
    else if (type == "warning") e.type = EventType::Warning;
    else if (type == "error") e.type = EventType::Error;
    else throw ParseError("unknown event type '" + type + "'");
    e.payload = j.at("payload");
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed event: ") + ex.what());
  }
}

inline std::string guide_mode_name(const GuideMode& m) {
  return std::visit(
      [](const auto& v) -> std::string {
        using M = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<M, GuidesOff>) return "off";
        else if constexpr (std::is_same_v<M, GuidesEquidistant>) return "equidistant";
        else if constexpr (std::is_same_v<M, GuidesPerNode>) return "per-node";
        else return "dynamic";
      },
      m);
}

namespace detail {

inline nlohmann::json guide_mode_json(const GuideMode& m) {
  nlohmann::json j{{"mode", guide_mode_name(m)}};
  if (const auto* eq = std::get_if<GuidesEquidistant>(&m)) j["count"] = eq->count;
  if (const auto* dyn = std::get_if<GuidesDynamic>(&m)) {
    j["cursor"] = nlohmann::json::array({dyn->cursor.x, dyn->cursor.y});
    j["snap"] = dyn->snap;
  }
  return j;
}

inline GuideMode guide_mode_from_json(const nlohmann::json& j) {
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "off") return GuidesOff{};
  if (mode == "per-node") return GuidesPerNode{};
  if (mode == "equidistant") {
    const int k = j.value("count", 4);
    if (k < 1) throw DataError("equidistant guide count must be at least 1");
    return GuidesEquidistant{k};
  }
  if (mode == "dynamic") {
    GuidesDynamic d;
    if (j.contains("cursor")) {
      const auto& c = j.at("cursor");
      d.cursor = {c.at(0).get<double>(), c.at(1).get<double>()};
    }
    d.snap = j.value("snap", true);
    return d;
  }
  throw DataError("unknown guide mode '" + mode + "'");
}

inline nlohmann::json vec_json(Vec2 v) { return nlohmann::json::array({v.x, v.y}); }

inline Vec2 vec_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected a [x, y] pair");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace detail

inline std::string command_name(const Command& c) {
  static constexpr const char* names[] = {"LoadGraph",     "RunBaseLayout", "ActivateLens", "DeactivateLens",
                                          "MoveLens",      "ResizeLens",    "SelectFocus",  "SetAttributes",
                                          "SetMetric",     "SetThreshold",  "SetGuideMode", "SetEdgeFilter",
                                          "SetCursor",     "Tick",          "ExportScene",  "ExportSvg"};
  return names[c.index()];
}

inline nlohmann::json command_to_json(const Command& c) {
  nlohmann::json j{{"type", command_name(c)}};
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, cmd::LoadGraph>) {
          if (v.graph) j["graph"] = *v.graph;
          if (v.nodes_csv) j["nodes_csv"] = *v.nodes_csv;
          if (v.edges_csv) j["edges_csv"] = *v.edges_csv;
          if (v.usecase_seed) j["usecase_seed"] = *v.usecase_seed;
        } else if constexpr (std::is_same_v<T, cmd::RunBaseLayout>) {
          j["ideal_edge_length"] = v.params.ideal_edge_length;
          j["repulsion"] = v.params.repulsion_strength;
          j["cooling_steps"] = v.params.cooling_steps;
          j["seed"] = v.params.seed;
        } else if constexpr (std::is_same_v<T, cmd::ActivateLens>) {
          j["center"] = detail::vec_json(v.center);
          j["radius"] = v.radius;
        } else if constexpr (std::is_same_v<T, cmd::MoveLens>) {
          j["center"] = detail::vec_json(v.center);
        } else if constexpr (std::is_same_v<T, cmd::ResizeLens>) {
          j["radius"] = v.radius;
        } else if constexpr (std::is_same_v<T, cmd::SelectFocus>) {
          j["id"] = v.id;
        } else if constexpr (std::is_same_v<T, cmd::SetAttributes>) {
          j["names"] = v.names;
        } else if constexpr (std::is_same_v<T, cmd::SetMetric>) {
          j["metric"] = std::string(to_string(v.metric));
        } else if constexpr (std::is_same_v<T, cmd::SetThreshold>) {
          j["threshold"] = v.threshold;
        } else if constexpr (std::is_same_v<T, cmd::SetGuideMode>) {
          j.update(detail::guide_mode_json(v.mode));
        } else if constexpr (std::is_same_v<T, cmd::SetEdgeFilter>) {
          j["mode"] = std::string(to_string(v.mode));
        } else if constexpr (std::is_same_v<T, cmd::SetCursor>) {
          j["position"] = detail::vec_json(v.position);
        } else if constexpr (std::is_same_v<T, cmd::Tick>) {
          j["n"] = v.count;
        }
      },
      c);
  return j;
}

inline Command command_from_json(const nlohmann::json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "LoadGraph") {
      cmd::LoadGraph c;
      if (j.contains("graph")) c.graph = j.at("graph");
      if (j.contains("nodes_csv")) c.nodes_csv = j.at("nodes_csv").get<std::string>();
      if (j.contains("edges_csv")) c.edges_csv = j.at("edges_csv").get<std::string>();
      if (j.contains("usecase_seed")) c.usecase_seed = j.at("usecase_seed").get<std::uint64_t>();
      const int sources = (c.graph ? 1 : 0) + ((c.nodes_csv || c.edges_csv) ? 1 : 0) + (c.usecase_seed ? 1 : 0);
      if (sources != 1) throw ParseError("LoadGraph needs exactly one of graph, nodes_csv+edges_csv, usecase_seed");
      if (c.nodes_csv.has_value() != c.edges_csv.has_value()) {
        throw ParseError("LoadGraph: nodes_csv and edges_csv go together");
      }
      return c;
    }
    if (type == "RunBaseLayout") {
      cmd::RunBaseLayout c;
      c.params.ideal_edge_length = j.value("ideal_edge_length", c.params.ideal_edge_length);
      c.params.repulsion_strength = j.value("repulsion", c.params.repulsion_strength);
      c.params.cooling_steps = j.value("cooling_steps", c.params.cooling_steps);
      c.params.seed = j.value("seed", c.params.seed);
      return c;
    }
    if (type == "ActivateLens") return cmd::ActivateLens{detail::vec_from_json(j.at("center")), j.at("radius").get<double>()};
    if (type == "DeactivateLens") return cmd::DeactivateLens{};
    if (type == "MoveLens") return cmd::MoveLens{detail::vec_from_json(j.at("center"))};
    if (type == "ResizeLens") return cmd::ResizeLens{j.at("radius").get<double>()};
    if (type == "SelectFocus") return cmd::SelectFocus{j.at("id").get<std::string>()};
    if (type == "SetAttributes") return cmd::SetAttributes{j.at("names").get<std::vector<std::string>>()};
    if (type == "SetMetric") {
      const auto m = parse_metric(j.at("metric").get<std::string>());
      if (!m) throw ParseError("unknown metric");
      return cmd::SetMetric{*m};
    }
    if (type == "SetThreshold") return cmd::SetThreshold{j.at("threshold").get<double>()};
    if (type == "SetGuideMode") return cmd::SetGuideMode{detail::guide_mode_from_json(j)};
    if (type == "SetEdgeFilter") {
      const auto f = parse_edge_filter(j.at("mode").get<std::string>());
      if (!f) throw ParseError("unknown edge filter mode");
      return cmd::SetEdgeFilter{*f};
    }
    if (type == "SetCursor") return cmd::SetCursor{detail::vec_from_json(j.at("position"))};
    if (type == "Tick") return cmd::Tick{j.value("n", 1)};
    if (type == "ExportScene") return cmd::ExportScene{};
    if (type == "ExportSvg") return cmd::ExportSvg{};
    throw ParseError("unknown command type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed command: ") + e.what());
  }
}

/// Commands keep full precision on the wire (shortest round-trip doubles),
/// with keys sorted.
inline std::string serialize_command(const Command& c) { return command_to_json(c).dump(); }

inline Command parse_command(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed command: ") + e.what());
  }
  return command_from_json(j);
}

}  // namespace lensgraph
