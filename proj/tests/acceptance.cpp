// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Independent reference code comes from test_support.hpp.

#include <array>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>

#include "lensgraph/lensgraph.hpp"
#include "test_support.hpp"

using namespace lensgraph;
namespace oracle = lensgraph::fixtures::oracle;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects the first few failure messages for a criterion.
class Check {
public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_ += (messages_.empty() ? "" : "; ") + what;
  }
  Outcome result(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failure(s): " + messages_};
  }

private:
  int failures_ = 0;
  std::string messages_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<Event> apply_all(Session& s, const std::vector<Command>& cmds) {
  std::vector<Event> out;
  for (const auto& c : cmds) {
    auto ev = s.apply(c);
    out.insert(out.end(), ev.begin(), ev.end());
  }
  return out;
}

bool any_error(const std::vector<Event>& ev) {
  for (const auto& e : ev) {
    if (e.type == EventType::Error) return true;
  }
  return false;
}

cmd::LoadGraph load_graph(const MultivariateGraph& g) {
  cmd::LoadGraph c;
  c.graph = graph_to_json(g);
  return c;
}

// ---------------------------------------------------------------------------

Outcome metric_oracle() {
  Check check;
  Rng rng(2024);
  double worst = 0.0;
  std::size_t undefined_seen = 0;
  for (const Metric metric : {Metric::Euclidean, Metric::Cosine, Metric::Pearson}) {
    for (int pair = 0; pair < 1000; ++pair) {
      const std::size_t m = 1 + rng.below(5);
      std::vector<double> x(m), y(m);
      for (auto& v : x) v = rng.uniform();
      for (auto& v : y) v = rng.uniform();
      // Seed degenerate inputs: zero vectors and constant vectors.
      switch (rng.below(8)) {
        case 0: std::fill(x.begin(), x.end(), 0.0); break;
        case 1: std::fill(y.begin(), y.end(), rng.uniform()); break;
        case 2: y = x; break;
        default: break;
      }
      const auto got = similarity(metric, x, y);
      std::optional<double> want;
      switch (metric) {
        case Metric::Euclidean: want = oracle::euclidean(x, y); break;
        case Metric::Cosine: want = oracle::cosine(x, y); break;
        case Metric::Pearson: want = oracle::pearson(x, y); break;
      }
      if (!want) ++undefined_seen;
      const std::string tag = std::string(to_string(metric)) + " pair " + std::to_string(pair);
      check.expect(got.has_value() == want.has_value(), tag + ": undefined flag differs");
      if (got && want) {
        const double err = std::abs(*got - *want);
        worst = std::max(worst, err);
        check.expect(err <= 1e-9, tag + ": |diff| = " + fmt("%.3g", err));
      }
    }
  }
  check.expect(undefined_seen > 0, "no undefined cases were generated");
  return check.result("3x1000 pairs, max |diff| " + fmt("%.2g", worst) + ", " + std::to_string(undefined_seen) +
                      " undefined cases agree");
}

// Three-node star on one attribute: values 0, 1/2, 1 give euclidean scores
// 1, 1/2, 0 against the focus, so the middle node sits exactly on the
// threshold when t = 1/2.
Outcome boundary_exactness() {
  Check check;
  double worst = 0.0;
  std::size_t cases = 0;

  // Through the session pipeline.
  {
    std::vector<Node> nodes = {{"f", {0.0}, 0}, {"m", {0.5}, 0}, {"z", {1.0}, 0}, {"q", {0.25}, 0}};
    const auto g = MultivariateGraph::build(AttributeSchema({"v"}), nodes,
                                            {{"f", "m", 1.0}, {"f", "z", 1.0}, {"f", "q", 1.0}});
    for (const double R : {50.0, 200.0, 1234.5}) {
      Session s;
      const auto ev = apply_all(s, {load_graph(g), cmd::RunBaseLayout{}, cmd::SetAttributes{{"v"}},
                                    cmd::SetThreshold{0.5}, cmd::ActivateLens{{0, 0}, R}, cmd::SelectFocus{"f"}});
      check.expect(!any_error(ev), "session rejected the boundary script");
      for (int t = 0; t < 600 && !s.snapshot().transition_settled; ++t) s.apply(cmd::Tick{1});
      check.expect(s.snapshot().transition_settled, "boundary transition did not settle");
      const auto m = *s.graph().find("m");
      check.expect(s.similarity()->scores[m] == 0.5, "boundary node score is not exactly t");
      const double err = std::abs(distance(s.current_positions()[m], s.lens_config()->center) - R);
      worst = std::max(worst, err);
      check.expect(err <= 1e-6, "session boundary error " + fmt("%.3g", err));
      ++cases;
    }
  }

  // Synthetic score vectors with planted s == t entries.
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + rng.below(40);
    const auto g = fixtures::random_graph(rng, n, 1, 0.1);
    LayoutState base;
    for (std::size_t i = 0; i < n; ++i) base.positions.push_back({rng.uniform(-300, 300), rng.uniform(-300, 300)});
    base.velocities.assign(n, Vec2{});
    SimilarityResult sim;
    sim.focus = rng.below(n);
    sim.threshold = rng.uniform(0.0, 0.95);
    for (std::size_t i = 0; i < n; ++i) {
      const auto pick = rng.below(3);
      sim.scores.push_back(pick == 0 ? sim.threshold : rng.uniform());
    }
    sim.scores[sim.focus] = 1.0;
    sim.qualifying = qualifying_nodes(sim.scores, sim.focus, sim.threshold);
    LensConfig lens;
    lens.center = {rng.uniform(-100, 100), rng.uniform(-100, 100)};
    lens.radius = rng.uniform(20, 400);
    const auto layout = compute_lens_layout(base, g, lens, sim);
    auto ts = begin_transition(base.positions, layout.targets, 40.0);
    while (!ts.settled && ts.steps < 600) ts = step_transition(std::move(ts));
    check.expect(ts.settled, "synthetic transition did not settle");
    for (std::size_t i = 0; i < n; ++i) {
      if (i == sim.focus || !sim.is_qualifying(i) || *sim.scores[i] != sim.threshold) continue;
      const double err = std::abs(distance(ts.current[i], lens.center) - lens.radius);
      worst = std::max(worst, err);
      check.expect(err <= 1e-6, "synthetic boundary error " + fmt("%.3g", err));
      ++cases;
    }
  }
  return check.result(std::to_string(cases) + " nodes with s = t, max | |p-c| - R | " + fmt("%.2g", worst));
}

Outcome radial_monotonicity() {
  Check check;
  Rng rng(31337);
  double worst_shift = 0.0;
  std::size_t pairs = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + rng.below(60);
    const auto g = fixtures::random_graph(rng, n, 1, 0.05);
    LayoutState base;
    // Clustered base positions force overlap resolution to do real work.
    const double spread = rng.uniform() < 0.5 ? 5.0 : 300.0;
    for (std::size_t i = 0; i < n; ++i) base.positions.push_back({rng.uniform(-spread, spread), rng.uniform(-spread, spread)});
    base.velocities.assign(n, Vec2{});
    SimilarityResult sim;
    sim.focus = rng.below(n);
    sim.threshold = rng.uniform(0.0, 0.9);
    for (std::size_t i = 0; i < n; ++i) sim.scores.push_back(rng.uniform());
    sim.scores[sim.focus] = 1.0;
    sim.qualifying = qualifying_nodes(sim.scores, sim.focus, sim.threshold);
    LensConfig lens;
    lens.center = {rng.uniform(-50, 50), rng.uniform(-50, 50)};
    lens.radius = rng.uniform(50, 400);
    const auto layout = compute_lens_layout(base, g, lens, sim);

    auto ts = begin_transition(base.positions, layout.targets, 40.0);
    while (!ts.settled && ts.steps < 600) ts = step_transition(std::move(ts));
    check.expect(ts.settled, "transition did not settle");

    std::vector<double> converged(n);
    for (const auto i : sim.qualifying) {
      converged[i] = distance(ts.current[i], lens.center);
      // Reference radius before any overlap handling.
      const double planned = lens.radius * (1.0 - *sim.scores[i]) / (1.0 - sim.threshold);
      const double shift = std::abs(converged[i] - planned);
      worst_shift = std::max(worst_shift, shift);
      check.expect(shift <= 1e-12,
                   "radius moved by " + fmt("%.3g", shift) + " during placement");
    }
    for (const auto i : sim.qualifying) {
      for (const auto j : sim.qualifying) {
        if (*sim.scores[i] > *sim.scores[j]) {
          ++pairs;
          check.expect(converged[i] < converged[j], "s_i > s_j but r_i >= r_j");
        }
      }
    }
  }
  return check.result(std::to_string(pairs) + " ordered pairs strictly monotone, max radius shift " +
                      fmt("%.2g", worst_shift));
}

Outcome mental_map_and_transition(Outcome& transition_outcome) {
  Check mm;
  Check tr;
  Rng rng(4242);
  std::size_t context_nodes = 0;
  int max_ticks = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(199);
    const std::size_t m = 1 + rng.below(4);
    const auto g = fixtures::random_graph(rng, n, m, std::min(1.0, 3.0 / static_cast<double>(n)), 0.05);
    LayoutParams params;
    params.cooling_steps = 60;
    params.seed = rng.next();
    Session s;
    std::vector<std::string> attrs;
    for (std::size_t c = 0; c < m; ++c) {
      if (c == 0 || rng.uniform() < 0.5) attrs.push_back("a" + std::to_string(c));
    }
    auto ev = apply_all(s, {load_graph(g), cmd::RunBaseLayout{params},
                            cmd::SetMetric{static_cast<Metric>(rng.below(3))}, cmd::SetAttributes{attrs},
                            cmd::SetThreshold{rng.uniform(0.0, 0.9)}});
    const auto base = s.base_layout().positions;
    const Vec2 anchor = base[rng.below(n)];
    ev = s.apply(cmd::ActivateLens{anchor + Vec2{rng.uniform(-20, 20), rng.uniform(-20, 20)}, rng.uniform(20, 250)});
    if (any_error(ev)) {
      // Every selected column can be constant on small graphs; that is a
      // data error, not a mental-map violation.
      mm.expect(ev[0].payload["message"].get<std::string>().find("attribute") != std::string::npos,
                "unexpected activation error: " + ev[0].payload.dump());
      continue;
    }
    const auto& layout = *s.lens_layout();
    const auto& sim = *s.similarity();
    const Vec2 center = s.lens_config()->center;
    const double R = s.lens_config()->radius;

    std::vector<double> prev(n);
    for (std::size_t i = 0; i < n; ++i) prev[i] = distance(s.current_positions()[i], layout.targets[i]);
    int ticks = 0;
    while (!s.snapshot().transition_settled && ticks < 600) {
      s.apply(cmd::Tick{1});
      ++ticks;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = distance(s.current_positions()[i], layout.targets[i]);
        tr.expect(d <= prev[i], "distance to target increased at tick " + std::to_string(ticks));
        prev[i] = d;
      }
    }
    max_ticks = std::max(max_ticks, ticks);
    tr.expect(s.snapshot().transition_settled, "session transition not settled within 600 ticks");

    const auto& now = s.current_positions();
    for (std::size_t i = 0; i < n; ++i) {
      const bool moved = !(now[i] == base[i]);
      const bool inside = distance(base[i], center) <= R;
      switch (layout.roles[i]) {
        case Role::Context:
          ++context_nodes;
          mm.expect(!moved, "context node moved");
          mm.expect(!sim.is_qualifying(i) && !inside, "context node is qualifying or inside the disc");
          break;
        case Role::InLens: mm.expect(sim.is_qualifying(i), "in-lens node does not qualify"); break;
        case Role::Pushed: mm.expect(!sim.is_qualifying(i) && inside, "pushed node was not inside the disc"); break;
        case Role::Focus: mm.expect(i == sim.focus, "focus role on a non-focus node"); break;
      }
    }
  }

  // Transitions from rest over wide distance ranges, outside any session.
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(50);
    const double scale = std::pow(10.0, rng.uniform(-2, 4));
    std::vector<Vec2> from(n), to(n);
    for (auto& p : from) p = {rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
    for (auto& p : to) p = {rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
    auto ts = begin_transition(from, to, 40.0, {}, 1.0 / 60.0);
    std::vector<double> prev(n);
    for (std::size_t i = 0; i < n; ++i) prev[i] = distance(from[i], to[i]);
    while (!ts.settled && ts.steps < 600) {
      ts = step_transition(std::move(ts));
      for (std::size_t i = 0; i < n; ++i) {
        const double d = distance(ts.current[i], to[i]);
        tr.expect(d <= prev[i], "distance to target increased (scale " + fmt("%.3g", scale) + ")");
        prev[i] = d;
      }
    }
    max_ticks = std::max(max_ticks, ts.steps);
    tr.expect(ts.settled, "synthetic transition not settled within 600 ticks");
  }

  transition_outcome = tr.result("100 session + 200 synthetic transitions, non-increasing, max " +
                                 std::to_string(max_ticks) + " ticks to settle");
  return mm.result("100 random graphs, " + std::to_string(context_nodes) + " context nodes bit-identical");
}

Outcome edge_filter_soundness() {
  Check check;
  Rng rng(99);
  const auto g = fixtures::random_graph(rng, 120, 3, 0.04, 0.02);
  Session s;
  LayoutParams params;
  params.cooling_steps = 100;
  auto ev = apply_all(s, {load_graph(g), cmd::RunBaseLayout{params}, cmd::SetAttributes{{"a0", "a1"}},
                          cmd::SetEdgeFilter{EdgeFilter::Incident}, cmd::ActivateLens{{0, 0}, 80}});
  check.expect(!any_error(ev), "setup failed");
  std::size_t checked_edges = 0;
  std::array<int, 3> mode_frames{};
  for (int frame = 0; frame < 500; ++frame) {
    switch (rng.below(6)) {
      case 0: s.apply(cmd::MoveLens{{rng.uniform(-150, 150), rng.uniform(-150, 150)}}); break;
      case 1: s.apply(cmd::ResizeLens{rng.uniform(10, 200)}); break;
      case 2: s.apply(cmd::SetEdgeFilter{static_cast<EdgeFilter>(rng.below(3))}); break;
      case 3: s.apply(cmd::SetThreshold{rng.uniform(0.0, 1.0)}); break;
      default: break;
    }
    s.apply(cmd::Tick{1});
    const auto snap = s.snapshot();
    const auto& pos = s.current_positions();
    const Vec2 c = s.lens_config()->center;
    const double R = s.lens_config()->radius;
    const EdgeFilter mode = s.lens_config()->edge_filter;
    ++mode_frames[static_cast<int>(mode)];
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto a = *g.find(g.edges()[e].source);
      const auto b = *g.find(g.edges()[e].target);
      const bool in_a = std::hypot(pos[a].x - c.x, pos[a].y - c.y) <= R;
      const bool in_b = std::hypot(pos[b].x - c.x, pos[b].y - c.y) <= R;
      bool want = true;
      if (mode == EdgeFilter::Incident) want = in_a || in_b;
      if (mode == EdgeFilter::Interior) want = in_a && in_b;
      check.expect(snap.edges[e].visible == want, "frame " + std::to_string(frame) + " edge " + std::to_string(e));
      ++checked_edges;
    }
  }
  return check.result("500 frames (off/incident/interior = " + std::to_string(mode_frames[0]) + "/" +
                      std::to_string(mode_frames[1]) + "/" + std::to_string(mode_frames[2]) + "), " +
                      std::to_string(checked_edges) + " edge checks");
}

Outcome affine_invariance() {
  Check check;
  Rng rng(555);
  std::size_t comparisons = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng.below(60);
    const std::size_t m = 1 + rng.below(5);
    const auto g = fixtures::random_graph(rng, n, m, 0.05, 0.05);
    // Positive integer scale and integer shift per column.
    std::vector<Node> nodes = g.nodes();
    for (std::size_t c = 0; c < m; ++c) {
      const double a = static_cast<double>(1 + rng.below(50));
      const double b = static_cast<double>(static_cast<long long>(rng.below(2001)) - 1000);
      for (auto& node : nodes) {
        if (node.attributes[c]) node.attributes[c] = a * *node.attributes[c] + b;
      }
    }
    const auto h = MultivariateGraph::build(g.schema(), nodes, g.edges());
    std::vector<std::string> all;
    for (std::size_t c = 0; c < m; ++c) all.push_back("a" + std::to_string(c));
    const std::size_t focus = rng.below(n);
    for (const Metric metric : {Metric::Euclidean, Metric::Cosine, Metric::Pearson}) {
      const SimilarityConfig cfg{metric, all, rng.uniform()};
      try {
        const auto r1 = compute_similarities(g, focus, cfg);
        const auto r2 = compute_similarities(h, focus, cfg);
        ++comparisons;
        bool same = r1.scores.size() == r2.scores.size();
        for (std::size_t i = 0; same && i < r1.scores.size(); ++i) {
          same = r1.scores[i].has_value() == r2.scores[i].has_value() &&
                 (!r1.scores[i] || std::bit_cast<std::uint64_t>(*r1.scores[i]) ==
                                       std::bit_cast<std::uint64_t>(*r2.scores[i]));
        }
        check.expect(same, "scores differ bitwise");
        check.expect(r1.qualifying == r2.qualifying, "qualifying sets differ");
      } catch (const DataError&) {
        // All columns constant: both sides must reject.
        bool rejected = false;
        try {
          compute_similarities(h, focus, cfg);
        } catch (const DataError&) {
          rejected = true;
        }
        check.expect(rejected, "only the original graph was rejected");
      }
    }
  }
  return check.result(std::to_string(comparisons) + " score vectors bit-identical after a*x+b (a>0)");
}

Outcome usecase_reproduction() {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  Session s;
  auto ev = apply_all(s, {fixtures::load_usecase(1), cmd::RunBaseLayout{},
                          cmd::SetAttributes{kGoalkeeperAttributes}, cmd::SetThreshold{0.5},
                          cmd::ActivateLens{{0, 0}, 200}, cmd::SelectFocus{std::string(kUsecaseFocus)}});
  check.expect(!any_error(ev), "pipeline setup failed");
  int ticks = 0;
  while (!s.snapshot().transition_settled && ticks < 600) {
    s.apply(cmd::Tick{1});
    ++ticks;
  }
  const auto svg = s.apply(cmd::ExportSvg{});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.expect(svg.size() == 1 && svg[0].type == EventType::Frame, "svg export failed");
  check.expect(s.snapshot().transition_settled, "transition did not settle");

  const auto& g = s.graph();
  check.expect(g.node_count() == 95, "node count " + std::to_string(g.node_count()));
  check.expect(g.edge_count() == 1046, "edge count " + std::to_string(g.edge_count()));
  check.expect(g.schema().size() == 39, "attribute count " + std::to_string(g.schema().size()));

  // Independent count: normalize the two columns and score every node.
  std::vector<std::vector<std::optional<double>>> cols;
  for (const auto& name : kGoalkeeperAttributes) {
    std::vector<std::optional<double>> col;
    const auto c = *g.schema().index_of(name);
    for (const auto& node : g.nodes()) col.push_back(node.attributes[c]);
    cols.push_back(oracle::minmax_column(col));
  }
  const auto focus = *g.find(std::string(kUsecaseFocus));
  std::size_t oracle_count = 0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (i == focus) continue;
    std::vector<double> x, y;
    for (const auto& col : cols) {
      x.push_back(*col[focus]);
      y.push_back(*col[i]);
    }
    if (*oracle::euclidean(x, y) >= 0.5) ++oracle_count;
  }
  std::size_t in_lens = 0;
  const auto snap = s.snapshot();
  for (const auto& node : snap.nodes) {
    if (node.role == Role::InLens && distance(node.position, snap.lens->center) <= 200.0 + 1e-6) ++in_lens;
  }
  check.expect(in_lens == oracle_count,
               "in-lens " + std::to_string(in_lens) + " vs oracle " + std::to_string(oracle_count));
  check.expect(in_lens >= 3 && in_lens <= 8, "in-lens count " + std::to_string(in_lens) + " outside [3,8]");
  check.expect(seconds < 2.0, "pipeline took " + fmt("%.3f", seconds) + " s");
  return check.result("95/1046/39, in-lens " + std::to_string(in_lens) + " = oracle " +
                      std::to_string(oracle_count) + ", pipeline " + fmt("%.3f", seconds) + " s, " +
                      std::to_string(ticks) + " ticks");
}

Outcome determinism_golden() {
  Check check;
  const auto render = [] {
    Session s;
    apply_all(s, fixtures::golden_script());
    return std::pair{serialize_scene(s.snapshot()) + "\n", export_svg(s.snapshot())};
  };
  const auto [scene1, svg1] = render();
  const auto [scene2, svg2] = render();
  check.expect(scene1 == scene2, "scene-json differs between runs");
  check.expect(svg1 == svg2, "svg differs between runs");
  const std::string dir = LENSGRAPH_GOLDEN_DIR;
  try {
    check.expect(read_text_file(dir + "/usecase_scene.json") == scene1, "scene-json differs from golden file");
    check.expect(read_text_file(dir + "/usecase_scene.svg") == svg1, "svg differs from golden file");
  } catch (const Error& e) {
    check.expect(false, e.what());
  }
  return check.result("scene-json " + std::to_string(scene1.size()) + " B, svg " + std::to_string(svg1.size()) +
                      " B, identical across runs and to golden files");
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
  };
  Outcome transition;
  const std::vector<Criterion> criteria = {
      {"metric-oracle", metric_oracle},
      {"boundary-exactness", boundary_exactness},
      {"radial-monotonicity", radial_monotonicity},
      {"mental-map", [&] { return mental_map_and_transition(transition); }},
      {"smooth-transition", [&] { return transition; }},
      {"edge-filter-soundness", edge_filter_soundness},
      {"affine-invariance", affine_invariance},
      {"usecase-reproduction", usecase_reproduction},
      {"determinism-golden", determinism_golden},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %-22s %s\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
