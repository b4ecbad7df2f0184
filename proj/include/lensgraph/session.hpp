#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lensgraph/base_layout.hpp"
#include "lensgraph/graph.hpp"
#include "lensgraph/graph_io.hpp"
#include "lensgraph/lens.hpp"
#include "lensgraph/protocol.hpp"
#include "lensgraph/scene.hpp"
#include "lensgraph/similarity.hpp"
#include "lensgraph/svg.hpp"
#include "lensgraph/transition.hpp"
#include "lensgraph/usecase.hpp"

namespace lensgraph {

/// One analyst's engine state. Commands are applied strictly in order; a
/// rejected command leaves the session untouched. There is no wall clock:
/// animation advances only on Tick.
class Session {
public:
  static constexpr double kStiffness = 40.0;

  /// Applies one command and returns the resulting events.
  std::vector<Event> apply(const Command& command) {
    Session next = *this;
    std::vector<Event> events;
    try {
      std::visit([&](const auto& c) { next.handle(c, events); }, command);
    } catch (const Error& e) {
      return {Event::error(command_name(command) + ": " + e.what())};
    } catch (const std::exception& e) {
      return {Event::error(command_name(command) + ": " + e.what())};
    }
    *this = std::move(next);
    return events;
  }

  bool has_graph() const { return graph_ != nullptr; }
  bool has_layout() const { return base_.has_value(); }
  bool lens_active() const { return lens_.has_value(); }

  const MultivariateGraph& graph() const { return *graph_; }
  const LayoutState& base_layout() const { return *base_; }
  const std::optional<LensConfig>& lens_config() const { return lens_; }
  const std::optional<LensLayout>& lens_layout() const { return lens_layout_; }
  const std::optional<SimilarityResult>& similarity() const { return similarity_; }
  const std::optional<TransitionState>& transition() const { return transition_; }
  const SimilarityConfig& similarity_config() const { return sim_cfg_; }
  const std::vector<Vec2>& current_positions() const { return current_; }
  long long frame() const { return frame_; }

  /// Structural invariants; used by the fuzz tests.
  bool invariants_hold() const {
    if (lens_layout_ && !lens_) return false;
    if (transition_ && !lens_layout_) return false;
    if (base_ && (!graph_ || base_->positions.size() != graph_->node_count())) return false;
    if (base_ && current_.size() != base_->positions.size()) return false;
    return true;
  }

  SceneSnapshot snapshot() const {
    if (!graph_ || !base_) throw StateError("no scene before the graph is loaded and laid out");
    const auto& g = *graph_;
    SceneSnapshot s;
    s.frame = frame_;
    const double max_degree = static_cast<double>(g.max_degree());
    std::vector<char> missing(g.node_count(), 0);
    if (similarity_) {
      for (const auto i : similarity_->missing) missing[i] = 1;
    }
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      SceneNode n;
      n.id = g.nodes()[i].id;
      n.position = current_[i];
      n.size_scalar = max_degree > 0 ? static_cast<double>(g.nodes()[i].degree) / max_degree : 0.0;
      if (lens_layout_) {
        n.role = lens_layout_->roles[i];
        n.similarity_scalar = lens_layout_->similarity_scalars[i];
      }
      n.missing = missing[i] != 0;
      s.nodes.push_back(std::move(n));
    }

    std::vector<char> visible(g.edge_count(), 1);
    if (lens_) {
      std::fill(visible.begin(), visible.end(), 0);
      for (const auto e : compute_edge_visibility(g, current_, *lens_)) visible[e] = 1;
    }
    const double max_weight = g.max_weight();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& edge = g.edges()[e];
      s.edges.push_back({edge.source, edge.target, max_weight > 0 ? edge.weight / max_weight : 0.0, visible[e] != 0});
    }

    if (lens_ && lens_layout_) {
      s.lens = SceneLens{lens_->center, lens_->radius, lens_layout_->guide_radii, g.nodes()[lens_layout_->focus].id};
    }
    s.transition_settled = !transition_ || transition_->settled;
    return s;
  }

private:
  void require_graph() const {
    if (!graph_) throw StateError("no graph loaded");
  }
  void require_layout() const {
    require_graph();
    if (!base_) throw StateError("base layout has not been run");
  }
  void require_lens() const {
    require_layout();
    if (!lens_) throw StateError("lens is not active");
  }

  void validate_attributes(const std::vector<std::string>& names) const {
    if (names.empty()) throw DataError("attribute selection is empty");
    if (!graph_) return;
    for (const auto& n : names) {
      if (!graph_->schema().index_of(n)) {
        std::string valid;
        for (const auto& v : graph_->schema().names()) valid += (valid.empty() ? "" : ", ") + v;
        throw DataError("unknown attribute '" + n + "'; valid names: " + valid);
      }
    }
  }

  /// Recomputes focus, similarities and targets, then starts a fresh
  /// transition from wherever the nodes currently are.
  void rebuild_lens(std::vector<Event>& events) {
    auto& lens = *lens_;
    lens.similarity = sim_cfg_;
    const auto& g = *graph_;
    std::size_t focus = 0;
    if (explicit_focus_) {
      focus = *explicit_focus_;
      lens.center = base_->positions[focus];
    } else {
      focus = pick_focus(base_->positions, lens.center);
    }
    similarity_ = compute_similarities(g, focus, sim_cfg_);
    lens_layout_ = compute_lens_layout(*base_, g, lens, *similarity_);

    std::vector<Vec2> velocities;
    if (transition_) velocities = transition_->velocities;
    transition_ = begin_transition(current_, lens_layout_->targets, kStiffness, std::move(velocities));
    current_ = transition_->current;

    if (!similarity_->dropped.empty()) {
      std::string names;
      for (const auto& d : similarity_->dropped) names += (names.empty() ? "" : ", ") + d;
      events.push_back(Event::warning("dropped zero-range attribute(s): " + names));
    }
    if (const auto undefined = similarity_->undefined_count(); undefined > 0) {
      events.push_back(Event::warning(std::to_string(undefined) + " node(s) have an undefined similarity score"));
    }
    if (!lens_layout_->overlap_resolved) {
      events.push_back(Event::warning("lens overlap resolution did not fully converge"));
    }
  }

  void refresh_guides() {
    if (lens_ && lens_layout_) lens_layout_->guide_radii = compute_radial_guides(*lens_, *lens_layout_);
  }

  void handle(const cmd::LoadGraph& c, std::vector<Event>&) {
    MultivariateGraph g;
    if (c.graph) g = graph_from_json(*c.graph);
    else if (c.nodes_csv && c.edges_csv) g = load_graph_csv(*c.nodes_csv, *c.edges_csv);
    else if (c.usecase_seed) g = generate_usecase_graph(*c.usecase_seed);
    else throw ParseError("LoadGraph without a graph source");
    const SimilarityConfig keep = sim_cfg_;
    *this = Session{};
    sim_cfg_ = keep;
    sim_cfg_.selected.clear();
    graph_ = std::make_shared<const MultivariateGraph>(std::move(g));
  }

  void handle(const cmd::RunBaseLayout& c, std::vector<Event>& events) {
    require_graph();
    base_ = run_layout(*graph_, c.params);
    current_ = base_->positions;
    transition_.reset();
    if (lens_) rebuild_lens(events);
  }

  void handle(const cmd::ActivateLens& c, std::vector<Event>& events) {
    require_layout();
    if (!(c.radius > 0.0)) throw DataError("lens radius must be positive");
    if (sim_cfg_.selected.empty()) throw StateError("select at least one attribute before activating the lens");
    LensConfig lens;
    lens.center = c.center;
    lens.radius = c.radius;
    lens.guides = guides_;
    lens.edge_filter = edge_filter_;
    lens_ = lens;
    explicit_focus_.reset();
    rebuild_lens(events);
  }

  void handle(const cmd::DeactivateLens&, std::vector<Event>&) {
    require_lens();
    lens_.reset();
    lens_layout_.reset();
    transition_.reset();
    similarity_.reset();
    explicit_focus_.reset();
    current_ = base_->positions;
  }

  void handle(const cmd::MoveLens& c, std::vector<Event>& events) {
    require_lens();
    lens_->center = c.center;
    explicit_focus_.reset();
    rebuild_lens(events);
  }

  void handle(const cmd::ResizeLens& c, std::vector<Event>& events) {
    require_lens();
    if (!(c.radius > 0.0)) throw DataError("lens radius must be positive");
    lens_->radius = c.radius;
    rebuild_lens(events);
  }

  void handle(const cmd::SelectFocus& c, std::vector<Event>& events) {
    require_lens();
    const auto idx = graph_->find(c.id);
    if (!idx) throw DataError("unknown node '" + c.id + "'");
    explicit_focus_ = *idx;
    rebuild_lens(events);
  }

  void handle(const cmd::SetAttributes& c, std::vector<Event>& events) {
    require_graph();
    validate_attributes(c.names);
    sim_cfg_.selected = c.names;
    if (lens_) rebuild_lens(events);
  }

  void handle(const cmd::SetMetric& c, std::vector<Event>& events) {
    sim_cfg_.metric = c.metric;
    if (lens_) rebuild_lens(events);
  }

  void handle(const cmd::SetThreshold& c, std::vector<Event>& events) {
    if (!(c.threshold >= 0.0 && c.threshold <= 1.0)) throw DataError("threshold must lie in [0, 1]");
    sim_cfg_.threshold = c.threshold;
    if (lens_) rebuild_lens(events);
  }

  void handle(const cmd::SetGuideMode& c, std::vector<Event>&) {
    if (const auto* eq = std::get_if<GuidesEquidistant>(&c.mode); eq && eq->count < 1) {
      throw DataError("equidistant guide count must be at least 1");
    }
    guides_ = c.mode;
    if (auto* dyn = std::get_if<GuidesDynamic>(&guides_)) cursor_ = dyn->cursor;
    if (lens_) lens_->guides = guides_;
    refresh_guides();
  }

  void handle(const cmd::SetEdgeFilter& c, std::vector<Event>&) {
    edge_filter_ = c.mode;
    if (lens_) lens_->edge_filter = c.mode;
    if (lens_layout_) lens_layout_->visible_edges = compute_edge_visibility(*graph_, lens_layout_->targets, *lens_);
  }

  void handle(const cmd::SetCursor& c, std::vector<Event>&) {
    cursor_ = c.position;
    if (auto* dyn = std::get_if<GuidesDynamic>(&guides_)) dyn->cursor = c.position;
    if (lens_) lens_->guides = guides_;
    refresh_guides();
  }

  void handle(const cmd::Tick& c, std::vector<Event>& events) {
    require_layout();
    if (c.count < 0) throw DataError("tick count must be non-negative");
    for (int i = 0; i < c.count && transition_ && !transition_->settled; ++i) {
      transition_ = step_transition(std::move(*transition_));
    }
    if (transition_) current_ = transition_->current;
    frame_ += c.count;
    events.push_back({EventType::Frame, scene_to_json(snapshot())});
  }

  void handle(const cmd::ExportScene&, std::vector<Event>& events) {
    require_layout();
    events.push_back({EventType::Frame, scene_to_json(snapshot())});
  }

  void handle(const cmd::ExportSvg&, std::vector<Event>& events) {
    require_layout();
    events.push_back({EventType::Frame, {{"svg", export_svg(snapshot())}}});
  }

  std::shared_ptr<const MultivariateGraph> graph_;
  std::optional<LayoutState> base_;
  std::vector<Vec2> current_;
  SimilarityConfig sim_cfg_;
  GuideMode guides_ = GuidesOff{};
  EdgeFilter edge_filter_ = EdgeFilter::Off;
  Vec2 cursor_;
  std::optional<LensConfig> lens_;
  std::optional<std::size_t> explicit_focus_;
  std::optional<SimilarityResult> similarity_;
  std::optional<LensLayout> lens_layout_;
  std::optional<TransitionState> transition_;
  long long frame_ = 0;
};

}  // namespace lensgraph
