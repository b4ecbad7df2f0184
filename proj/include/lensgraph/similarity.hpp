#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lensgraph/graph.hpp"
#include "lensgraph/normalize.hpp"

namespace lensgraph {

enum class Metric { Euclidean, Cosine, Pearson };

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::Euclidean: return "euclidean";
    case Metric::Cosine: return "cosine";
    case Metric::Pearson: return "pearson";
  }
  return "euclidean";
}

inline std::optional<Metric> parse_metric(std::string_view s) {
  if (s == "euclidean") return Metric::Euclidean;
  if (s == "cosine") return Metric::Cosine;
  if (s == "pearson") return Metric::Pearson;
  return std::nullopt;
}

/// nullopt is the "undefined" marker: the node cannot be compared and is
/// never treated as qualifying.
using Similarity = std::optional<double>;

struct SimilarityConfig {
  Metric metric = Metric::Euclidean;
  std::vector<std::string> selected;
  double threshold = 0.5;

  friend bool operator==(const SimilarityConfig&, const SimilarityConfig&) = default;
};

namespace detail {

inline void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DataError("similarity: vector lengths differ (" + std::to_string(x.size()) + " vs " +
                    std::to_string(y.size()) + ")");
  }
}

inline double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace detail

/// 1 - RMS difference. Inputs are normalized to [0,1], so the RMS is too.
inline double similarity_euclidean(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  if (x.empty()) throw DataError("similarity: empty attribute vector");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return detail::clamp_unit(1.0 - std::sqrt(sum / static_cast<double>(x.size())));
}

/// (1 + cos) / 2. Undefined when either vector is zero.
inline Similarity similarity_cosine(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  double dot = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  if (xx == 0.0 || yy == 0.0) return std::nullopt;
  const double c = dot / (std::sqrt(xx) * std::sqrt(yy));
  return detail::clamp_unit((1.0 + c) / 2.0);
}

/// (1 + r) / 2. Undefined for fewer than two components or a constant vector.
inline Similarity similarity_pearson(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  const std::size_t m = x.size();
  if (m < 2) return std::nullopt;
  const auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
  };
  if (constant(x) || constant(y)) return std::nullopt;

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  const double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
  return detail::clamp_unit((1.0 + r) / 2.0);
}

inline Similarity similarity(Metric metric, std::span<const double> x, std::span<const double> y) {
  switch (metric) {
    case Metric::Euclidean: return similarity_euclidean(x, y);
    case Metric::Cosine: return similarity_cosine(x, y);
    case Metric::Pearson: return similarity_pearson(x, y);
  }
  return std::nullopt;
}

/// Focus-vs-all similarity over one attribute selection. Vectors are node
/// indexed (graph order, which is id order).
struct SimilarityResult {
  std::size_t focus = 0;
  std::vector<Similarity> scores;
  std::vector<std::size_t> qualifying;      // ascending node index, focus excluded
  std::vector<std::size_t> missing;         // nodes lacking a selected value
  std::vector<std::string> dropped;         // zero-range attributes
  double threshold = 0.0;

  bool is_qualifying(std::size_t node) const {
    return std::binary_search(qualifying.begin(), qualifying.end(), node);
  }

  std::size_t undefined_count() const {
    return static_cast<std::size_t>(std::count(scores.begin(), scores.end(), std::nullopt));
  }
};

/// Nodes whose score is defined and at least `threshold`, focus excluded.
inline std::vector<std::size_t> qualifying_nodes(const std::vector<Similarity>& scores,
                                                 std::size_t focus, double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (i != focus && scores[i] && *scores[i] >= threshold) out.push_back(i);
  }
  return out;
}

inline SimilarityResult compute_similarities(const MultivariateGraph& g, std::size_t focus,
                                             const SimilarityConfig& cfg) {
  if (focus >= g.node_count()) throw DataError("focus node index out of range");
  if (!(cfg.threshold >= 0.0 && cfg.threshold <= 1.0)) {
    throw DataError("similarity threshold must lie in [0, 1]");
  }
  const NormalizedAttributes norm = normalize_attributes(g, cfg.selected);
  const std::size_t n = g.node_count();
  const std::size_t m = norm.columns();

  SimilarityResult res;
  res.focus = focus;
  res.threshold = cfg.threshold;
  res.dropped = norm.dropped;
  res.scores.assign(n, std::nullopt);

  std::vector<std::vector<double>> dense(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!norm.complete(i)) {
      res.missing.push_back(i);
      continue;
    }
    dense[i].reserve(m);
    for (const auto& v : norm.rows[i]) dense[i].push_back(*v);
  }

  const bool focus_complete = norm.complete(focus);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == focus || !focus_complete || dense[i].size() != m) continue;
    res.scores[i] = similarity(cfg.metric, dense[focus], dense[i]);
  }
  res.scores[focus] = 1.0;
  res.qualifying = qualifying_nodes(res.scores, focus, cfg.threshold);
  return res;
}

inline SimilarityResult compute_similarities(const MultivariateGraph& g, const std::string& focus_id,
                                             const SimilarityConfig& cfg) {
  const auto focus = g.find(focus_id);
  if (!focus) throw DataError("unknown focus node '" + focus_id + "'");
  return compute_similarities(g, *focus, cfg);
}

}  // namespace lensgraph
