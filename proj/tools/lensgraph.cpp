// Command-line driver: batch export of lens scenes and the protocol server.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lensgraph/lensgraph.hpp"
#include "lensgraph/server.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

volatile std::sig_atomic_t g_stop = 0;
void on_signal(int) { g_stop = 1; }

struct CliConfig {
  std::string input;
  std::string edges;
  std::string format;  // graph-json | csv; inferred when empty
  std::string focus;
  std::vector<double> center;
  std::string metric = "euclidean";
  std::vector<std::string> attrs;
  double threshold = 0.5;
  double lens_radius = 200.0;
  std::string guides = "off";
  std::string edge_filter = "off";
  int max_ticks = 600;
  std::string out;
  std::string output_kind;  // scene-json | svg; inferred from --out when empty
  int serve_port = -1;
  std::uint64_t seed = 1;
  int layout_steps = 300;
  double edge_length = 30.0;
  long long generate_usecase = -1;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

lensgraph::GuideMode parse_guides(const std::string& spec) {
  using namespace lensgraph;
  if (spec == "off") return GuidesOff{};
  if (spec == "per-node") return GuidesPerNode{};
  if (spec.rfind("equidistant", 0) == 0) {
    int k = 4;
    if (spec.size() > 11) {
      if (spec[11] != ':') throw UsageError("--guides: expected equidistant[:K]");
      k = std::stoi(spec.substr(12));
    }
    if (k < 1) throw UsageError("--guides: equidistant count must be at least 1");
    return GuidesEquidistant{k};
  }
  if (spec.rfind("dynamic", 0) == 0) {
    GuidesDynamic d;
    if (spec.size() > 7) {
      if (spec[7] != ':') throw UsageError("--guides: expected dynamic[:X,Y[,nosnap]]");
      std::stringstream ss(spec.substr(8));
      std::string part;
      std::vector<std::string> parts;
      while (std::getline(ss, part, ',')) parts.push_back(part);
      if (parts.size() < 2) throw UsageError("--guides: dynamic cursor needs X,Y");
      d.cursor = {std::stod(parts[0]), std::stod(parts[1])};
      if (parts.size() > 2) d.snap = parts[2] != "nosnap";
    }
    return d;
  }
  throw UsageError("--guides: unknown mode '" + spec + "'");
}

lensgraph::cmd::LoadGraph load_command(const CliConfig& cfg) {
  lensgraph::cmd::LoadGraph load;
  if (cfg.generate_usecase >= 0) {
    load.usecase_seed = static_cast<std::uint64_t>(cfg.generate_usecase);
    return load;
  }
  const bool csv = cfg.format == "csv" || (cfg.format.empty() && (ends_with(cfg.input, ".csv") || !cfg.edges.empty()));
  if (csv) {
    if (cfg.edges.empty()) throw UsageError("csv input needs --edges <edge-csv>");
    load.nodes_csv = lensgraph::read_text_file(cfg.input);
    load.edges_csv = lensgraph::read_text_file(cfg.edges);
  } else {
    const auto text = lensgraph::read_text_file(cfg.input);
    try {
      load.graph = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw lensgraph::ParseError(std::string("malformed graph-json: ") + e.what());
    }
  }
  return load;
}

std::vector<lensgraph::Command> setup_commands(const CliConfig& cfg) {
  using namespace lensgraph;
  std::vector<Command> cmds;
  cmds.push_back(load_command(cfg));
  LayoutParams params;
  params.seed = cfg.seed;
  params.cooling_steps = cfg.layout_steps;
  params.ideal_edge_length = cfg.edge_length;
  cmds.push_back(cmd::RunBaseLayout{params});
  return cmds;
}

std::vector<lensgraph::Command> lens_commands(const CliConfig& cfg) {
  using namespace lensgraph;
  std::vector<Command> cmds;
  const bool lens = !cfg.focus.empty() || !cfg.center.empty();
  if (!lens) return cmds;
  const auto metric = parse_metric(cfg.metric);
  if (!metric) throw UsageError("--metric must be euclidean, cosine or pearson");
  const auto filter = parse_edge_filter(cfg.edge_filter);
  if (!filter) throw UsageError("--edge-filter must be off, incident or interior");
  cmds.push_back(cmd::SetMetric{*metric});
  cmds.push_back(cmd::SetThreshold{cfg.threshold});
  cmds.push_back(cmd::SetGuideMode{parse_guides(cfg.guides)});
  cmds.push_back(cmd::SetEdgeFilter{*filter});
  cmds.push_back(cmd::SetAttributes{cfg.attrs});
  const Vec2 center = cfg.center.empty() ? Vec2{} : Vec2{cfg.center[0], cfg.center[1]};
  cmds.push_back(cmd::ActivateLens{center, cfg.lens_radius});
  if (!cfg.focus.empty()) cmds.push_back(cmd::SelectFocus{cfg.focus});
  return cmds;
}

/// Applies commands, echoing warnings. Returns the last frame payload or
/// throws on the first error event.
nlohmann::json drive(lensgraph::Session& session, const std::vector<lensgraph::Command>& cmds) {
  nlohmann::json last;
  for (const auto& c : cmds) {
    for (const auto& e : session.apply(c)) {
      switch (e.type) {
        case lensgraph::EventType::Error: throw lensgraph::DataError(e.payload.at("message").get<std::string>());
        case lensgraph::EventType::Warning:
          std::cerr << "warning: " << e.payload.at("message").get<std::string>() << "\n";
          break;
        case lensgraph::EventType::Frame: last = e.payload; break;
      }
    }
  }
  return last;
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lensgraph::DataError("cannot write '" + path + "'");
  out << data;
}

int run_batch(const CliConfig& cfg) {
  using namespace lensgraph;
  if (cfg.generate_usecase >= 0 && cfg.input.empty() && cfg.focus.empty() && cfg.center.empty() &&
      cfg.output_kind.empty() && !ends_with(cfg.out, ".svg")) {
    write_output(cfg.out, write_graph_json(generate_usecase_graph(static_cast<std::uint64_t>(cfg.generate_usecase))));
    return kExitOk;
  }
  if (cfg.input.empty() && cfg.generate_usecase < 0) throw UsageError("--input is required");
  std::string kind = cfg.output_kind;
  if (kind.empty()) kind = ends_with(cfg.out, ".svg") ? "svg" : ends_with(cfg.out, ".json") ? "scene-json" : "";
  if (kind != "svg" && kind != "scene-json") {
    throw UsageError("output kind required: pass --output-kind scene-json|svg or an --out ending in .json/.svg");
  }

  auto cmds = setup_commands(cfg);
  const auto lens = lens_commands(cfg);
  cmds.insert(cmds.end(), lens.begin(), lens.end());

  Session session;
  drive(session, cmds);
  for (int tick = 0; tick < cfg.max_ticks && !session.snapshot().transition_settled; ++tick) {
    drive(session, {cmd::Tick{1}});
  }
  if (!session.snapshot().transition_settled) {
    std::cerr << "warning: transition not settled after " << cfg.max_ticks << " ticks\n";
  }
  if (kind == "svg") {
    write_output(cfg.out, drive(session, {cmd::ExportSvg{}}).at("svg").get<std::string>());
  } else {
    write_output(cfg.out, canonical_dump(drive(session, {cmd::ExportScene{}})) + "\n");
  }
  return kExitOk;
}

int run_serve(const CliConfig& cfg) {
  using namespace lensgraph;
  std::vector<Command> preload;
  if (!cfg.input.empty() || cfg.generate_usecase >= 0) preload = setup_commands(cfg);

  ProtocolServer::Options opts;
  opts.port = static_cast<std::uint16_t>(cfg.serve_port);
  opts.make_session = [preload] {
    Session s;
    for (const auto& c : preload) s.apply(c);
    return s;
  };
  // Validate the preload once up front so bad input fails fast.
  if (!preload.empty()) {
    Session probe;
    drive(probe, preload);
  }
  ProtocolServer server(opts);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on 127.0.0.1:" << server.port() << std::endl;
  server.run([] { return g_stop != 0; });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig cfg;
  CLI::App app{"lensgraph: comparison-lens engine for multivariate node-link diagrams"};
  app.add_option("--input", cfg.input, "graph-json file, or node-csv together with --edges");
  app.add_option("--edges", cfg.edges, "edge-csv file (csv input)");
  app.add_option("--format", cfg.format, "input format")->check(CLI::IsMember({"graph-json", "csv"}));
  auto* focus = app.add_option("--focus", cfg.focus, "focus node id; the lens centers on it");
  auto* center = app.add_option("--center", cfg.center, "lens center X,Y; the nearest node becomes the focus")
                     ->expected(2)
                     ->delimiter(',');
  focus->excludes(center);
  center->excludes(focus);
  app.add_option("--metric", cfg.metric, "euclidean | cosine | pearson")
      ->check(CLI::IsMember({"euclidean", "cosine", "pearson"}));
  app.add_option("--attrs", cfg.attrs, "comma-separated attributes for the similarity")->delimiter(',');
  app.add_option("--threshold", cfg.threshold, "similarity threshold in [0,1]")->check(CLI::Range(0.0, 1.0));
  app.add_option("--lens-radius", cfg.lens_radius, "lens radius (world units)")->check(CLI::PositiveNumber);
  app.add_option("--guides", cfg.guides, "off | equidistant[:K] | per-node | dynamic[:X,Y[,nosnap]]");
  app.add_option("--edge-filter", cfg.edge_filter, "off | incident | interior")
      ->check(CLI::IsMember({"off", "incident", "interior"}));
  app.add_option("--max-ticks", cfg.max_ticks, "tick cap while waiting for the transition to settle")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", cfg.out, "output path ('-' for stdout)");
  app.add_option("--output-kind", cfg.output_kind, "scene-json | svg")->check(CLI::IsMember({"scene-json", "svg"}));
  app.add_option("--serve", cfg.serve_port, "serve the session protocol on this port")->check(CLI::Range(0, 65535));
  app.add_option("--seed", cfg.seed, "base layout seed (LENSGRAPH_SEED overrides)");
  app.add_option("--layout-steps", cfg.layout_steps, "base layout cooling steps")->check(CLI::PositiveNumber);
  app.add_option("--edge-length", cfg.edge_length, "ideal edge length")->check(CLI::PositiveNumber);
  app.add_option("--generate-usecase", cfg.generate_usecase,
                 "use the synthetic use-case graph with this seed; alone with --out, writes it as graph-json")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (const char* env = std::getenv("LENSGRAPH_SEED"); env && *env) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: LENSGRAPH_SEED must be a non-negative integer\n";
      return kExitUsage;
    }
  }

  try {
    const bool lens = !cfg.focus.empty() || !cfg.center.empty();
    if (lens && cfg.attrs.empty()) throw UsageError("--attrs is required when a lens is requested");
    if (!lens && !cfg.attrs.empty()) throw UsageError("--attrs needs --focus or --center");
    if (cfg.serve_port >= 0) return run_serve(cfg);
    return run_batch(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const lensgraph::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
