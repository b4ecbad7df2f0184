#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lensgraph/graph.hpp"

namespace lensgraph {

/// Min-max scaled attribute matrix over the selected columns.
struct NormalizedAttributes {
  std::vector<std::string> kept;      // column names, in selection order
  std::vector<std::string> dropped;   // zero-range (or all-missing) columns
  std::vector<std::pair<double, double>> min_max;  // per kept column, raw units
  std::vector<std::vector<AttributeValue>> rows;   // node-major, |kept| per row

  std::size_t columns() const { return kept.size(); }

  /// True when the node has every kept value present.
  bool complete(std::size_t node) const {
    for (const auto& v : rows[node]) {
      if (!v) return false;
    }
    return true;
  }
};

/// Scales one column to [0, 1] in place. Returns the observed (min, max), or
/// nullopt when the column has no present value or zero range.
inline std::optional<std::pair<double, double>> min_max_scale(std::vector<AttributeValue>& column) {
  std::optional<double> lo, hi;
  for (const auto& v : column) {
    if (!v) continue;
    if (!lo || *v < *lo) lo = *v;
    if (!hi || *v > *hi) hi = *v;
  }
  if (!lo || !(*lo < *hi)) return std::nullopt;
  const double range = *hi - *lo;
  for (auto& v : column) {
    if (v) v = (*v - *lo) / range;
  }
  return std::pair{*lo, *hi};
}

inline NormalizedAttributes normalize_attributes(const MultivariateGraph& g,
                                                 const std::vector<std::string>& selected) {
  if (selected.empty()) throw DataError("attribute selection is empty");
  std::vector<std::size_t> columns;
  for (const auto& name : selected) {
    const auto idx = g.schema().index_of(name);
    if (!idx) {
      std::string valid;
      for (const auto& n : g.schema().names()) valid += (valid.empty() ? "" : ", ") + n;
      throw DataError("unknown attribute '" + name + "'; valid names: " + valid);
    }
    if (std::find(columns.begin(), columns.end(), *idx) != columns.end()) {
      throw DataError("attribute '" + name + "' selected twice");
    }
    columns.push_back(*idx);
  }

  const std::size_t n = g.node_count();
  NormalizedAttributes out;
  out.rows.assign(n, {});
  for (std::size_t c = 0; c < columns.size(); ++c) {
    std::vector<AttributeValue> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = g.nodes()[i].attributes[columns[c]];
    const auto range = min_max_scale(column);
    if (!range) {
      out.dropped.push_back(selected[c]);
      continue;
    }
    out.kept.push_back(selected[c]);
    out.min_max.push_back(*range);
    for (std::size_t i = 0; i < n; ++i) out.rows[i].push_back(column[i]);
  }
  if (out.kept.empty()) {
    throw DataError("no usable attributes: every selected column has zero range");
  }
  return out;
}

}  // namespace lensgraph
