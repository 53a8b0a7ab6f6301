#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <omp.h>
#include <optional>
#include <sstream>

#include "wsnloc/config.hpp"
#include "wsnloc/csv_io.hpp"
#include "wsnloc/experiment.hpp"
#include "wsnloc/plot.hpp"

namespace wsnloc::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::string algorithm = "both";
  std::string refine;
  int threads = 0;
  std::string figure = "error-vs-connectivity";

  // localize from files
  std::string edges_path;
  std::string anchors_path;
  std::string truth_path;
  std::optional<double> radio_range;
  bool diagnostics = false;

  // experiment
  std::optional<std::size_t> trials;
  bool full_range_error = false;

  // plot
  std::string input_path;
  std::string topology = "random";
  std::optional<std::size_t> anchors;
  std::optional<double> range_error;
  std::optional<double> plot_radio_range;
};

Config load(const Options& opt) {
  if (opt.config_path.empty()) {
    return Config{};
  }
  try {
    return load_config(opt.config_path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::vector<Algorithm> selected_algorithms(const std::string& name) {
  if (name == "mdsmap") {
    return {Algorithm::mdsmap};
  }
  if (name == "imds") {
    return {Algorithm::imds};
  }
  return {Algorithm::mdsmap, Algorithm::imds};
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

NetworkRequest validated_request(const Config& cfg) {
  try {
    cfg.network.topology.validate();
    if (cfg.network.anchor_count < 3 || cfg.network.anchor_count > cfg.network.topology.n) {
      throw std::invalid_argument("anchors must lie in [3, n]");
    }
    if (!(cfg.network.radio_range > 0.0)) {
      throw std::invalid_argument("radio_range must be positive");
    }
    if (!(cfg.network.range_error_fraction >= 0.0 && cfg.network.range_error_fraction <= 0.5)) {
      throw std::invalid_argument("range_error must lie in [0, 0.5]");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg.network;
}

int cmd_generate(const Options& opt, std::ostream& out) {
  const Config cfg = load(opt);
  const NetworkRequest request = validated_request(cfg);
  const Network net = generate_connected_network(request, opt.seed.value_or(cfg.network_seed));
  const fs::path dir = prepare_out(opt.out_dir);
  write_text_file((dir / "positions.csv").string(), positions_csv(net.truth));
  write_text_file((dir / "edges.csv").string(), edges_csv(net.graph));
  out << "topology " << to_string(request.topology.kind) << ", n = " << net.graph.size()
      << ", R = " << format_double(request.radio_range) << ", edges = " << net.graph.edge_count()
      << "\n";
  out << "average connectivity: " << format_double(average_connectivity(net.graph)) << "\n";
  return kExitOk;
}

int cmd_localize(const Options& opt, std::ostream& out) {
  Config cfg = load(opt);
  RefineMode mode = cfg.sweep.refine;
  if (!opt.refine.empty()) {
    mode = parse_refine_mode(opt.refine);
  }

  std::optional<NetworkGraph> graph;
  NodePositions anchors;
  std::optional<NodePositions> truth;
  double radius = 0.0;

  if (!opt.edges_path.empty()) {
    if (opt.anchors_path.empty()) {
      throw UsageError("--edges needs --anchors");
    }
    radius = opt.radio_range.value_or(cfg.network.radio_range);
    if (!opt.radio_range && opt.config_path.empty()) {
      throw UsageError("--edges needs --radio-range (or a config with [network] radio_range)");
    }
    anchors = parse_positions_csv(read_text_file(opt.anchors_path));
    graph = parse_edges_csv(read_text_file(opt.edges_path), radius, anchors.size());
    if (!opt.truth_path.empty()) {
      NodePositions t = parse_positions_csv(read_text_file(opt.truth_path));
      if (t.size() != anchors.size()) {
        throw UsageError("truth and anchor files differ in node count");
      }
      t.anchor_ids = anchors.anchor_ids;
      truth = std::move(t);
    }
  } else if (!opt.config_path.empty()) {
    const NetworkRequest request = validated_request(cfg);
    radius = request.radio_range;
    Network net = generate_connected_network(request, opt.seed.value_or(cfg.network_seed));
    graph = std::move(net.graph);
    anchors = net.truth;
    truth = net.truth;
  } else {
    throw UsageError("localize needs --config or --edges/--anchors");
  }

  if (anchors.anchor_ids.size() < 3) {
    throw UsageError("at least 3 anchors are required, got " +
                     std::to_string(anchors.anchor_ids.size()));
  }
  if (!is_connected(*graph)) {
    throw DisconnectedGraphError("input graph is disconnected");
  }

  const fs::path dir = prepare_out(opt.out_dir);
  std::string report = error_report_header();
  for (Algorithm alg : selected_algorithms(opt.algorithm)) {
    const std::string name(to_string(alg));
    const Localization loc = localize(*graph, anchors, alg, mode, Execution::parallel);
    write_text_file((dir / ("estimates_" + name + ".csv")).string(), positions_csv(loc.estimated));
    if (opt.diagnostics) {
      write_text_file((dir / ("distances_" + name + ".csv")).string(),
                      distance_matrix_csv(loc.distances));
      write_text_file((dir / ("relative_" + name + ".csv")).string(), relative_map_csv(loc.relative));
      write_text_file((dir / ("spectrum_" + name + ".csv")).string(), spectrum_csv(loc.relative));
    }
    if (truth) {
      const ErrorReport r = localization_error(loc.estimated, *truth, radius);
      report += error_report_row(name, r);
      write_text_file((dir / ("errors_" + name + ".csv")).string(), per_node_errors_csv(r));
      out << name << ": error " << std::fixed << std::setprecision(3) << r.error_percent
          << "% of R\n";
      out.unsetf(std::ios::floatfield);
    } else {
      report += name + ",unavailable," + std::to_string(graph->size()) + ',' +
                std::to_string(anchors.anchor_ids.size()) + ',' + format_double(radius) + '\n';
      out << name << ": estimates written, error unavailable (no truth)\n";
    }
  }
  write_text_file((dir / "error_report.csv").string(), report);
  return kExitOk;
}

int cmd_experiment(const Options& opt, std::ostream& out, std::ostream& err) {
  Config cfg = load(opt);
  Sweep sweep = cfg.sweep;
  if (opt.full_range_error) {
    sweep.range_errors = default_sweep_full_range_error().range_errors;
  }
  if (!opt.refine.empty()) {
    sweep.refine = parse_refine_mode(opt.refine);
  }
  SuiteOptions so;
  so.trials = opt.trials.value_or(cfg.trials);
  so.base_seed = opt.seed.value_or(cfg.suite_seed);
  so.threads = opt.threads;
  if (so.trials == 0) {
    throw UsageError("trials must be positive");
  }
  try {
    sweep.topology_base.validate();
    for (TopologyKind kind : sweep.topologies) {
      TopologySpec t = sweep.topology_base;
      t.kind = kind;
      t.validate();
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  so.on_cell = [&](const CellResult& c, std::size_t index, std::size_t total) {
    out << '[' << index + 1 << '/' << total << "] " << to_string(c.key.topology)
        << " anchors=" << c.key.anchors << " R=" << format_double(c.key.radio_range)
        << " range_error=" << format_double(c.key.range_error);
    if (c.failure) {
      out << " FAILED: " << *c.failure << '\n';
    } else {
      out << std::fixed << std::setprecision(2) << " conn=" << c.connectivity.mean
          << " mdsmap=" << c.error_mdsmap.mean << "% imds=" << c.error_imds.mean << "%\n";
      out.unsetf(std::ios::floatfield);
    }
    out.flush();
  };

  const SuiteResult result = run_suite(sweep, so);
  const fs::path dir = prepare_out(opt.out_dir);
  export_results(result, (dir / "results.csv").string());

  struct Acc {
    double mdsmap = 0.0, imds = 0.0;
    std::size_t cells = 0, imds_better = 0;
  };
  std::map<std::pair<std::string, std::size_t>, Acc> table;
  for (const CellResult& c : result.cells) {
    if (c.failure) {
      continue;
    }
    Acc& a = table[{std::string(to_string(c.key.topology)), c.key.anchors}];
    a.mdsmap += c.error_mdsmap.mean;
    a.imds += c.error_imds.mean;
    a.cells += 1;
    a.imds_better += c.error_imds.mean < c.error_mdsmap.mean ? 1 : 0;
  }
  out << "\nsummary (mean error over cells, % of R)\n";
  out << std::left << std::setw(10) << "topology" << std::right << std::setw(8) << "anchors"
      << std::setw(10) << "mdsmap" << std::setw(10) << "imds" << std::setw(14) << "imds better"
      << '\n';
  for (const auto& [key, a] : table) {
    out << std::left << std::setw(10) << key.first << std::right << std::setw(8) << key.second
        << std::fixed << std::setprecision(2) << std::setw(10) << a.mdsmap / double(a.cells)
        << std::setw(10) << a.imds / double(a.cells) << std::setw(8) << a.imds_better << " / "
        << a.cells << '\n';
    out.unsetf(std::ios::floatfield);
  }
  out << "wrote " << (dir / "results.csv").string() << " (" << result.cells.size() << " cells)\n";
  if (const std::size_t failed = result.failed_cells(); failed > 0) {
    err << failed << " cell(s) failed\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_plot(const Options& opt, std::ostream& out) {
  const FigureKind kind = parse_figure_kind(opt.figure);
  const std::string input =
      opt.input_path.empty() ? (fs::path(opt.out_dir) / "results.csv").string() : opt.input_path;
  const SuiteResult result = read_results(input);
  if (result.cells.empty()) {
    throw std::runtime_error("'" + input + "' contains no cells");
  }
  PlotFilter filter;
  filter.topology = parse_topology_kind(opt.topology);
  filter.anchors = opt.anchors;
  filter.range_error = opt.range_error;
  filter.radio_range = opt.plot_radio_range;
  const fs::path dir = prepare_out(opt.out_dir);
  const fs::path path =
      dir / (std::string(to_string(kind)) + "_" + std::string(to_string(filter.topology)) + ".svg");
  emit_plot(result, kind, path.string(), filter);
  out << "wrote " << path.string() << '\n';
  return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"MDS-MAP and IMDS localization simulator for 2-D sensor networks", "wsnloc"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "key = value config file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--seed", opt.seed, "seed override");
  };

  auto* gen = app.add_subcommand("generate", "write a deployment and its measured graph");
  add_common(gen);

  auto* loc = app.add_subcommand("localize", "localize one network");
  add_common(loc);
  loc->add_option("--algorithm", opt.algorithm, "mdsmap, imds or both")
      ->check(CLI::IsMember({"mdsmap", "imds", "both"}));
  loc->add_option("--refine", opt.refine, "all-hops or two-hop-only")
      ->check(CLI::IsMember({"all-hops", "two-hop-only"}));
  loc->add_option("--edges", opt.edges_path, "edge list CSV (i,j,distance)")->check(CLI::ExistingFile);
  loc->add_option("--anchors", opt.anchors_path, "positions CSV; rows with is_anchor=1 are used")
      ->check(CLI::ExistingFile);
  loc->add_option("--truth", opt.truth_path, "true positions CSV for the error report")
      ->check(CLI::ExistingFile);
  loc->add_option("--radio-range", opt.radio_range, "radio range R")->check(CLI::PositiveNumber);
  loc->add_flag("--diagnostics", opt.diagnostics, "also write distance matrix, relative map, spectrum");
  loc->add_option("--threads", opt.threads, "worker cap")->check(CLI::NonNegativeNumber);

  auto* exp = app.add_subcommand("experiment", "run the parameter sweep");
  add_common(exp);
  exp->add_option("--threads", opt.threads, "worker cap")->check(CLI::NonNegativeNumber);
  exp->add_option("--trials", opt.trials, "trials per cell");
  exp->add_option("--refine", opt.refine, "all-hops or two-hop-only")
      ->check(CLI::IsMember({"all-hops", "two-hop-only"}));
  exp->add_flag("--full-range-error", opt.full_range_error, "sweep range error 0..30% (7 levels)");

  auto* plot = app.add_subcommand("plot", "draw a figure from results.csv");
  plot->add_option("--input", opt.input_path, "results CSV (default OUT/results.csv)");
  plot->add_option("--out", opt.out_dir, "output directory");
  plot->add_option("--figure", opt.figure, "figure kind")
      ->check(CLI::IsMember({"error-vs-connectivity", "error-vs-anchors", "error-vs-range-error"}));
  plot->add_option("--topology", opt.topology, "random, grid or hex_grid")
      ->check(CLI::IsMember({"random", "grid", "hex_grid"}));
  plot->add_option("--anchors", opt.anchors, "anchor count (error-vs-connectivity)");
  plot->add_option("--range-error", opt.range_error, "range error fraction");
  plot->add_option("--radio-range", opt.plot_radio_range, "radio range (error-vs-range-error)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  if (opt.threads > 0) {
    omp_set_num_threads(opt.threads);
  }

  try {
    if (gen->parsed()) {
      return cmd_generate(opt, out);
    }
    if (loc->parsed()) {
      return cmd_localize(opt, out);
    }
    if (exp->parsed()) {
      return cmd_experiment(opt, out, err);
    }
    return cmd_plot(opt, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int run(int argc, char** argv) { return run(argc, argv, std::cout, std::cerr); }

} // namespace wsnloc::cli
