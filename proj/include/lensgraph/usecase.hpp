#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lensgraph/geometry.hpp"
#include "lensgraph/graph.hpp"

namespace lensgraph {

// Synthetic stand-in for a season of club football: 95 players, 1046
// shared-club edges weighted by the number of clubs two players share, and
// 39 per-player statistics. The goalkeeper pair of attributes separates a
// small cohort of regular keepers from backups and outfield players.

inline constexpr std::size_t kUsecaseNodes = 95;
inline constexpr std::size_t kUsecaseEdges = 1046;
inline constexpr std::string_view kUsecaseFocus = "p07";
inline const std::vector<std::string> kGoalkeeperAttributes{"keeper_missed", "keeper_save_total"};

inline const std::vector<std::string>& usecase_attribute_names() {
  static const std::vector<std::string> names{
      "minutes_played",   "matches_played",     "goals",           "assists",
      "shots_total",      "shots_on_target",    "shots_off_target", "shots_blocked",
      "passes_total",     "passes_completed",   "pass_accuracy",   "crosses",
      "crosses_completed", "through_balls",     "key_passes",      "dribbles",
      "dribbles_won",     "ball_possession",    "ball_recoveries", "tackles",
      "tackles_won",      "interceptions",      "clearances",      "blocks",
      "aerial_duels",     "aerial_duels_won",   "fouls_committed", "fouls_suffered",
      "offsides",         "yellow_cards",       "red_cards",       "distance_covered",
      "top_speed",        "sprints",            "corners_taken",   "free_kicks_taken",
      "penalties_scored", "keeper_missed",      "keeper_save_total"};
  return names;
}

namespace detail {

enum class Position { Keeper, BackupKeeper, Defender, Midfielder, Forward };

inline Position usecase_position(std::size_t index) {
  // 1-based ids p01..p95; p07 is the designated focus keeper.
  static const std::set<std::size_t> keepers{7, 15, 23, 40, 58, 77};
  static const std::set<std::size_t> backups{31, 66, 89};
  const std::size_t id = index + 1;
  if (keepers.count(id)) return Position::Keeper;
  if (backups.count(id)) return Position::BackupKeeper;
  switch (id % 3) {
    case 0: return Position::Defender;
    case 1: return Position::Midfielder;
    default: return Position::Forward;
  }
}

inline double rounded(double v, double step) { return std::round(v / step) * step; }

inline std::vector<AttributeValue> usecase_attributes(Position pos, Rng& rng) {
  const auto& names = usecase_attribute_names();
  std::map<std::string, double> v;
  const bool keeper = pos == Position::Keeper || pos == Position::BackupKeeper;
  const double minutes = pos == Position::Keeper         ? rng.uniform(900, 1170)
                         : pos == Position::BackupKeeper ? rng.uniform(90, 270)
                                                         : rng.uniform(60, 1170);
  const double share = minutes / 1170.0;
  const auto count = [&](double full_season_mean) {
    return std::max(0.0, std::round(rng.normal(full_season_mean * share, 0.25 * full_season_mean * share + 0.5)));
  };
  const double att = pos == Position::Forward ? 1.0 : pos == Position::Midfielder ? 0.55 : pos == Position::Defender ? 0.2 : 0.0;
  const double def = pos == Position::Defender ? 1.0 : pos == Position::Midfielder ? 0.6 : pos == Position::Forward ? 0.2 : 0.05;

  v["minutes_played"] = std::round(minutes);
  v["matches_played"] = std::max(1.0, std::round(minutes / 90.0));
  v["goals"] = count(6 * att);
  v["assists"] = count(3 * (att + 0.3 * def) * (keeper ? 0.0 : 1.0));
  v["shots_total"] = count(30 * att + 2 * def);
  v["shots_on_target"] = std::min(v["shots_total"], count(12 * att + 0.5 * def));
  v["shots_off_target"] = std::max(0.0, v["shots_total"] - v["shots_on_target"] - count(3 * att));
  v["shots_blocked"] = v["shots_total"] - v["shots_on_target"] - v["shots_off_target"];
  v["passes_total"] = count(keeper ? 250 : 400 + 250 * def);
  v["passes_completed"] = std::round(v["passes_total"] * rng.uniform(keeper ? 0.6 : 0.72, keeper ? 0.78 : 0.92));
  v["pass_accuracy"] = v["passes_total"] > 0 ? rounded(100.0 * v["passes_completed"] / v["passes_total"], 0.1) : 0.0;
  v["crosses"] = count(keeper ? 0 : 20 * (att + 0.4 * def));
  v["crosses_completed"] = std::round(v["crosses"] * rng.uniform(0.15, 0.4));
  v["through_balls"] = count(keeper ? 0 : 6 * att);
  v["key_passes"] = count(keeper ? 0 : 15 * att + 3 * def);
  v["dribbles"] = count(keeper ? 0 : 25 * att + 5 * def);
  v["dribbles_won"] = std::round(v["dribbles"] * rng.uniform(0.4, 0.7));
  v["ball_possession"] = rounded(rng.uniform(keeper ? 1.0 : 3.0, keeper ? 3.0 : 9.0), 0.1);
  v["ball_recoveries"] = count(keeper ? 20 : 30 + 40 * def);
  v["tackles"] = count(keeper ? 0 : 8 + 25 * def);
  v["tackles_won"] = std::round(v["tackles"] * rng.uniform(0.5, 0.8));
  v["interceptions"] = count(keeper ? 1 : 4 + 18 * def);
  v["clearances"] = count(keeper ? 8 : 2 + 35 * def * def);
  v["blocks"] = count(keeper ? 0 : 1 + 8 * def);
  v["aerial_duels"] = count(keeper ? 4 : 10 + 25 * def);
  v["aerial_duels_won"] = std::round(v["aerial_duels"] * rng.uniform(0.35, 0.7));
  v["fouls_committed"] = count(keeper ? 0.5 : 6 + 6 * def);
  v["fouls_suffered"] = count(keeper ? 0.5 : 6 + 8 * att);
  v["offsides"] = count(keeper ? 0 : 6 * att * att);
  v["yellow_cards"] = count(keeper ? 0.3 : 1 + 1.5 * def);
  v["red_cards"] = rng.uniform() < (keeper ? 0.02 : 0.05) ? 1.0 : 0.0;
  v["distance_covered"] = rounded(minutes / 90.0 * (keeper ? rng.uniform(4.5, 6.0) : rng.uniform(9.0, 12.0)), 0.1);
  v["top_speed"] = rounded(keeper ? rng.uniform(25.0, 29.0) : rng.uniform(29.0, 35.5), 0.1);
  v["sprints"] = count(keeper ? 5 : 120 + 60 * att);
  v["corners_taken"] = count(keeper ? 0 : 10 * att * (1 - def));
  v["free_kicks_taken"] = count(keeper ? 4 : 5 * att);
  v["penalties_scored"] = count(keeper ? 0 : 0.8 * att * att);

  if (pos == Position::Keeper) {
    // Regular keepers cluster around a full-season workload.
    v["keeper_missed"] = std::round(rng.uniform(8.0, 13.0));
    v["keeper_save_total"] = std::round(rng.uniform(32.0, 44.0));
  } else if (pos == Position::BackupKeeper) {
    v["keeper_missed"] = std::round(rng.uniform(1.0, 3.0));
    v["keeper_save_total"] = std::round(rng.uniform(2.0, 7.0));
  } else {
    v["keeper_missed"] = 0.0;
    v["keeper_save_total"] = 0.0;
  }

  std::vector<AttributeValue> out;
  out.reserve(names.size());
  for (const auto& n : names) out.emplace_back(v.at(n));
  return out;
}

}  // namespace detail

/// Deterministic, statistics-matched use-case graph.
inline MultivariateGraph generate_usecase_graph(std::uint64_t seed) {
  Rng rng(seed ^ 0x5eed0c0ffeeULL);
  constexpr std::size_t kClubs = 14;

  std::vector<Node> nodes;
  std::vector<std::vector<std::size_t>> careers(kUsecaseNodes);
  for (std::size_t i = 0; i < kUsecaseNodes; ++i) {
    Node n;
    char id[8];
    std::snprintf(id, sizeof id, "p%02zu", i + 1);
    n.id = id;
    n.attributes = detail::usecase_attributes(detail::usecase_position(i), rng);
    nodes.push_back(std::move(n));

    const std::size_t clubs = 1 + rng.below(3);
    std::set<std::size_t> career;
    while (career.size() < clubs) career.insert(rng.below(kClubs));
    careers[i].assign(career.begin(), career.end());
  }

  // Shared clubs per pair.
  std::map<std::pair<std::size_t, std::size_t>, double> shared;
  for (std::size_t a = 0; a < kUsecaseNodes; ++a) {
    for (std::size_t b = a + 1; b < kUsecaseNodes; ++b) {
      std::vector<std::size_t> common;
      std::set_intersection(careers[a].begin(), careers[a].end(), careers[b].begin(), careers[b].end(),
                            std::back_inserter(common));
      if (!common.empty()) shared[{a, b}] = static_cast<double>(common.size());
    }
  }

  std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> pairs(shared.begin(), shared.end());
  // Fisher-Yates with the portable generator, then trim or pad to the exact count.
  for (std::size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[rng.below(i)]);
  if (pairs.size() > kUsecaseEdges) pairs.resize(kUsecaseEdges);
  while (pairs.size() < kUsecaseEdges) {
    const std::size_t a = rng.below(kUsecaseNodes);
    const std::size_t b = rng.below(kUsecaseNodes);
    if (a == b) continue;
    const auto key = std::minmax(a, b);
    if (shared.count(key)) continue;
    shared[key] = 1.0;
    pairs.push_back({key, 1.0});
  }
  std::sort(pairs.begin(), pairs.end());

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [key, w] : pairs) edges.push_back({nodes[key.first].id, nodes[key.second].id, w});
  return MultivariateGraph::build(AttributeSchema(usecase_attribute_names()), std::move(nodes), edges);
}

}  // namespace lensgraph
