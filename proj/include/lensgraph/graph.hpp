#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lensgraph/error.hpp"

namespace lensgraph {

using AttributeValue = std::optional<double>;  // nullopt = missing

class AttributeSchema {
public:
  AttributeSchema() = default;
  explicit AttributeSchema(std::vector<std::string> names) : names_(std::move(names)) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
      if (n.empty()) throw DataError("attribute names must be non-empty");
      if (!seen.insert(n).second) throw DataError("duplicate attribute name '" + n + "'");
    }
  }

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

  std::optional<std::size_t> index_of(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  friend bool operator==(const AttributeSchema&, const AttributeSchema&) = default;

private:
  std::vector<std::string> names_;
};

struct Node {
  std::string id;
  std::vector<AttributeValue> attributes;
  std::size_t degree = 0;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  std::string source;
  std::string target;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph with a quantitative attribute vector per node.
///
/// Nodes are kept sorted by id so that every id-ordered iteration in the
/// engine is simply index order. Edges are stored once per unordered pair;
/// duplicates met during construction are merged by summing their weights.
class MultivariateGraph {
public:
  MultivariateGraph() = default;

  static MultivariateGraph build(AttributeSchema schema, std::vector<Node> nodes,
                                 const std::vector<Edge>& edges) {
    MultivariateGraph g;
    g.schema_ = std::move(schema);
    std::sort(nodes.begin(), nodes.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      auto& n = nodes[i];
      if (n.id.empty()) throw DataError("node id must be non-empty");
      if (i > 0 && nodes[i - 1].id == n.id) throw DataError("duplicate node id '" + n.id + "'");
      if (n.attributes.size() != g.schema_.size()) {
        throw DataError("node '" + n.id + "' has " + std::to_string(n.attributes.size()) +
                        " attribute values, schema has " + std::to_string(g.schema_.size()));
      }
      for (const auto& v : n.attributes) {
        if (v && !std::isfinite(*v)) {
          throw DataError("node '" + n.id + "' has a non-finite attribute value");
        }
      }
      n.degree = 0;
      g.index_.emplace(n.id, i);
    }
    g.nodes_ = std::move(nodes);

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_to_edge;
    for (const auto& e : edges) {
      const auto s = g.find(e.source);
      const auto t = g.find(e.target);
      if (!s) throw DataError("edge endpoint '" + e.source + "' is not a node");
      if (!t) throw DataError("edge endpoint '" + e.target + "' is not a node");
      if (*s == *t) throw DataError("self-loop on node '" + e.source + "'");
      if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
        throw DataError("edge " + e.source + "-" + e.target + " must have a positive finite weight");
      }
      const auto key = std::minmax(*s, *t);
      if (const auto it = pair_to_edge.find(key); it != pair_to_edge.end()) {
        g.edges_[it->second].weight += e.weight;
        continue;
      }
      pair_to_edge.emplace(key, g.edges_.size());
      g.edges_.push_back(e);
      g.endpoints_.emplace_back(*s, *t);
      ++g.nodes_[*s].degree;
      ++g.nodes_[*t].degree;
    }
    return g;
  }

  const AttributeSchema& schema() const { return schema_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Node indices of edge `e`, in the order the edge was first seen.
  std::pair<std::size_t, std::size_t> endpoints(std::size_t e) const { return endpoints_[e]; }

  std::optional<std::size_t> find(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t max_degree() const {
    std::size_t m = 0;
    for (const auto& n : nodes_) m = std::max(m, n.degree);
    return m;
  }

  double max_weight() const {
    double m = 0.0;
    for (const auto& e : edges_) m = std::max(m, e.weight);
    return m;
  }

  friend bool operator==(const MultivariateGraph& a, const MultivariateGraph& b) {
    return a.schema_ == b.schema_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

private:
  AttributeSchema schema_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace lensgraph
