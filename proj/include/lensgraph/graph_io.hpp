#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lensgraph/graph.hpp"

namespace lensgraph {

// graph-json:
//   { "schema": [names...],
//     "nodes": [{"id": "...", "attrs": [number | null, ...]}, ...],
//     "edges": [{"source": "...", "target": "...", "weight": number}, ...] }
//
// node-csv: header `id,<attr1>,...`, empty cell = missing.
// edge-csv: header `source,target,weight`.

namespace detail {

inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::optional<double> parse_number(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

/// Splits one CSV record. Supports double-quoted fields with "" escapes.
inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote on line " + std::to_string(line_no));
  out.push_back(std::move(cur));
  return out;
}

inline std::vector<std::vector<std::string>> read_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line, line_no));
  }
  return rows;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace detail

inline MultivariateGraph graph_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw ParseError("graph document must be a JSON object");
    std::vector<std::string> names;
    for (const auto& n : doc.at("schema")) names.push_back(n.get<std::string>());
    AttributeSchema schema(std::move(names));

    std::vector<Node> nodes;
    for (const auto& jn : doc.at("nodes")) {
      Node n;
      n.id = jn.at("id").get<std::string>();
      for (const auto& v : jn.at("attrs")) {
        if (v.is_null()) {
          n.attributes.emplace_back(std::nullopt);
        } else if (v.is_number()) {
          n.attributes.emplace_back(v.get<double>());
        } else {
          throw ParseError("attribute of node '" + n.id + "' is neither a number nor null");
        }
      }
      nodes.push_back(std::move(n));
    }

    std::vector<Edge> edges;
    for (const auto& je : doc.at("edges")) {
      Edge e;
      e.source = je.at("source").get<std::string>();
      e.target = je.at("target").get<std::string>();
      e.weight = je.contains("weight") ? je.at("weight").get<double>() : 1.0;
      edges.push_back(std::move(e));
    }
    return MultivariateGraph::build(std::move(schema), std::move(nodes), edges);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed graph-json: ") + e.what());
  }
}

inline MultivariateGraph load_graph_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed graph-json: ") + e.what());
  }
  return graph_from_json(doc);
}

inline MultivariateGraph load_graph_csv(std::string_view node_csv, std::string_view edge_csv) {
  const auto node_rows = detail::read_csv(node_csv);
  if (node_rows.empty() || node_rows.front().empty() || node_rows.front().front() != "id") {
    throw ParseError("node-csv must start with a header 'id,<attr1>,...'");
  }
  const auto& header = node_rows.front();
  AttributeSchema schema(std::vector<std::string>(header.begin() + 1, header.end()));

  std::vector<Node> nodes;
  for (std::size_t r = 1; r < node_rows.size(); ++r) {
    const auto& row = node_rows[r];
    if (row.size() != header.size()) {
      throw ParseError("node-csv row " + std::to_string(r + 1) + " has " +
                       std::to_string(row.size()) + " fields, expected " +
                       std::to_string(header.size()));
    }
    Node n;
    n.id = row[0];
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c].empty()) {
        n.attributes.emplace_back(std::nullopt);
        continue;
      }
      const auto v = detail::parse_number(row[c]);
      if (!v) throw ParseError("node-csv: '" + row[c] + "' is not a number (node '" + n.id + "')");
      n.attributes.emplace_back(*v);
    }
    nodes.push_back(std::move(n));
  }

  const auto edge_rows = detail::read_csv(edge_csv);
  if (edge_rows.empty() || edge_rows.front() != std::vector<std::string>{"source", "target", "weight"}) {
    throw ParseError("edge-csv must start with the header 'source,target,weight'");
  }
  std::vector<Edge> edges;
  for (std::size_t r = 1; r < edge_rows.size(); ++r) {
    const auto& row = edge_rows[r];
    if (row.size() != 3) throw ParseError("edge-csv row " + std::to_string(r + 1) + " must have 3 fields");
    const auto w = detail::parse_number(row[2]);
    if (!w) throw ParseError("edge-csv: weight '" + row[2] + "' is not a number");
    edges.push_back({row[0], row[1], *w});
  }
  return MultivariateGraph::build(std::move(schema), std::move(nodes), edges);
}

inline nlohmann::json graph_to_json(const MultivariateGraph& g) {
  nlohmann::json doc;
  doc["schema"] = g.schema().names();
  auto nodes = nlohmann::json::array();
  for (const auto& n : g.nodes()) {
    auto attrs = nlohmann::json::array();
    for (const auto& v : n.attributes) attrs.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
    nodes.push_back({{"id", n.id}, {"attrs", std::move(attrs)}});
  }
  doc["nodes"] = std::move(nodes);
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"source", e.source}, {"target", e.target}, {"weight", e.weight}});
  }
  doc["edges"] = std::move(edges);
  return doc;
}

inline std::string write_graph_json(const MultivariateGraph& g) { return graph_to_json(g).dump(1) + "\n"; }

inline std::string write_node_csv(const MultivariateGraph& g) {
  std::string out = "id";
  for (const auto& n : g.schema().names()) out += "," + detail::csv_field(n);
  out += "\n";
  for (const auto& n : g.nodes()) {
    out += detail::csv_field(n.id);
    for (const auto& v : n.attributes) {
      out += ",";
      if (v) out += detail::format_number(*v);
    }
    out += "\n";
  }
  return out;
}

inline std::string write_edge_csv(const MultivariateGraph& g) {
  std::string out = "source,target,weight\n";
  for (const auto& e : g.edges()) {
    out += detail::csv_field(e.source) + "," + detail::csv_field(e.target) + "," +
           detail::format_number(e.weight) + "\n";
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lensgraph
