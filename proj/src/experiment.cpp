#include "wsnloc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <omp.h>
#include <tuple>

#include "wsnloc/csv_io.hpp"

namespace wsnloc {

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::mdsmap ? "mdsmap" : "imds";
}

Localization localize(const NetworkGraph& graph, const NodePositions& anchors, Algorithm algorithm,
                      RefineMode mode, Execution exec) {
  Localization out;
  out.distances = algorithm == Algorithm::mdsmap
                      ? apsp_classic(graph, exec)
                      : apsp_refined(graph, graph.radio_range(), mode, exec);
  out.relative = classical_mds(out.distances);
  out.estimated = align_to_anchors(out.relative, anchors);
  return out;
}

TrialResult run_trial(const TrialConfig& config) {
  const NetworkRequest request{config.topology, config.radio_range, config.range_error_fraction,
                               config.anchor_count};
  std::size_t attempt = 0;
  while (true) {
    const Network net = generate_connected_network(request, config.seed, attempt);
    attempt = net.attempts;
    try {
      const Localization classic =
          localize(net.graph, net.truth, Algorithm::mdsmap, config.refine, Execution::serial);
      const Localization refined =
          localize(net.graph, net.truth, Algorithm::imds, config.refine, Execution::serial);
      TrialResult r;
      r.connectivity = average_connectivity(net.graph);
      r.error_mdsmap = localization_error(classic.estimated, net.truth, config.radio_range).error_percent;
      r.error_imds = localization_error(refined.estimated, net.truth, config.radio_range).error_percent;
      r.seed = config.seed;
      r.attempts = attempt;
      return r;
    } catch (const DegenerateAnchorsError&) {
      // Collinear relative anchors: draw the next network of the sequence.
      if (attempt >= kMaxConnectAttempts) {
        throw;
      }
    }
  }
}

namespace {

auto key_tuple(const CellKey& k) {
  return std::make_tuple(to_string(k.topology), k.anchors, k.radio_range, k.range_error);
}

} // namespace

bool operator<(const CellKey& a, const CellKey& b) { return key_tuple(a) < key_tuple(b); }
bool operator==(const CellKey& a, const CellKey& b) { return key_tuple(a) == key_tuple(b); }

std::size_t SuiteResult::failed_cells() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const CellResult& c) { return c.failure.has_value(); }));
}

std::vector<CellKey> Sweep::cells() const {
  std::vector<CellKey> out;
  for (TopologyKind t : topologies) {
    for (std::size_t a : anchor_counts) {
      for (double r : radio_ranges) {
        for (double e : range_errors) {
          out.push_back({t, a, r, e});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Sweep default_sweep() {
  Sweep s;
  s.topologies = {TopologyKind::random, TopologyKind::grid, TopologyKind::hex_grid};
  s.anchor_counts = {3, 4, 6, 10};
  s.radio_ranges = {1.5, 1.85, 2.2, 2.55, 2.9};
  s.range_errors = {0.0, 0.05, 0.10, 0.15, 0.20, 0.25};
  return s;
}

Sweep default_sweep_full_range_error() {
  Sweep s = default_sweep();
  s.range_errors.push_back(0.30);
  return s;
}

Seed trial_seed(Seed base_seed, const CellKey& cell, std::size_t trial) {
  return derive_seed(base_seed, {static_cast<std::uint64_t>(cell.topology), cell.anchors,
                                 seed_word(cell.radio_range), seed_word(cell.range_error), trial});
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) {
    s.mean = s.stddev = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) {
      sq += (v - s.mean) * (v - s.mean);
    }
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

SuiteResult run_suite(const Sweep& sweep, const SuiteOptions& options) {
  if (options.trials == 0) {
    throw std::invalid_argument("trials must be positive");
  }
  const std::vector<CellKey> keys = sweep.cells();
  if (keys.empty()) {
    throw std::invalid_argument("sweep has no cells");
  }
  if (options.threads > 0) {
    omp_set_num_threads(options.threads);
  }

  SuiteResult result;
  result.cells.reserve(keys.size());
  const auto trials = static_cast<std::ptrdiff_t>(options.trials);
  for (std::size_t c = 0; c < keys.size(); ++c) {
    const CellKey& key = keys[c];
    TrialConfig base;
    base.topology = sweep.topology_base;
    base.topology.kind = key.topology;
    base.anchor_count = key.anchors;
    base.radio_range = key.radio_range;
    base.range_error_fraction = key.range_error;
    base.refine = sweep.refine;

    std::vector<TrialResult> runs(options.trials);
    std::vector<std::string> errors(options.trials);
#pragma omp parallel for schedule(dynamic) if (options.exec == Execution::parallel)
    for (std::ptrdiff_t t = 0; t < trials; ++t) {
      const auto idx = static_cast<std::size_t>(t);
      TrialConfig cfg = base;
      cfg.seed = trial_seed(options.base_seed, key, idx);
      try {
        runs[idx] = run_trial(cfg);
      } catch (const std::exception& e) {
        errors[idx] = e.what();
        if (errors[idx].empty()) {
          errors[idx] = "trial failed";
        }
      }
    }

    CellResult cell;
    cell.key = key;
    cell.trials = options.trials;
    const auto failed = std::find_if(errors.begin(), errors.end(),
                                     [](const std::string& e) { return !e.empty(); });
    if (failed != errors.end()) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      cell.trials = 0;
      cell.connectivity = cell.error_mdsmap = cell.error_imds = Summary{nan, nan};
      cell.failure = "trial " + std::to_string(failed - errors.begin()) + ": " + *failed;
    } else {
      std::vector<double> conn, em, ei;
      for (const TrialResult& r : runs) {
        conn.push_back(r.connectivity);
        em.push_back(r.error_mdsmap);
        ei.push_back(r.error_imds);
      }
      cell.connectivity = summarize(conn);
      cell.error_mdsmap = summarize(em);
      cell.error_imds = summarize(ei);
    }
    result.cells.push_back(std::move(cell));
    if (options.on_cell) {
      options.on_cell(result.cells.back(), c, keys.size());
    }
  }
  return result;
}

namespace {

constexpr std::string_view kResultsHeader =
    "topology,anchors,R,range_error,connectivity_mean,err_mdsmap_mean,err_mdsmap_std,"
    "err_imds_mean,err_imds_std,trials";

} // namespace

std::string results_csv(const SuiteResult& result) {
  std::vector<const CellResult*> order;
  for (const CellResult& c : result.cells) {
    order.push_back(&c);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const CellResult* a, const CellResult* b) { return a->key < b->key; });
  std::string out(kResultsHeader);
  out += '\n';
  for (const CellResult* c : order) {
    out += std::string(to_string(c->key.topology)) + ',' + std::to_string(c->key.anchors) + ',' +
           format_double(c->key.radio_range) + ',' + format_double(c->key.range_error) + ',' +
           format_double(c->connectivity.mean) + ',' + format_double(c->error_mdsmap.mean) + ',' +
           format_double(c->error_mdsmap.stddev) + ',' + format_double(c->error_imds.mean) + ',' +
           format_double(c->error_imds.stddev) + ',' + std::to_string(c->trials) + '\n';
  }
  return out;
}

void export_results(const SuiteResult& result, const std::string& path) {
  write_text_file(path, results_csv(result));
}

SuiteResult parse_results_csv(const std::string& text) {
  SuiteResult out;
  std::size_t start = 0;
  bool header = true;
  std::size_t line_no = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) {
      end = text.size();
    }
    std::string_view line(text.data() + start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (line.empty()) {
      continue;
    }
    if (header) {
      if (line != kResultsHeader) {
        throw std::invalid_argument("results CSV has an unexpected header");
      }
      header = false;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 10) {
      throw std::invalid_argument("results CSV line " + std::to_string(line_no) +
                                  " needs 10 fields");
    }
    CellResult c;
    c.key = {parse_topology_kind(f[0]), parse_size(f[1]), parse_double(f[2]), parse_double(f[3])};
    c.connectivity.mean = parse_double(f[4]);
    c.error_mdsmap = {parse_double(f[5]), parse_double(f[6])};
    c.error_imds = {parse_double(f[7]), parse_double(f[8])};
    c.trials = parse_size(f[9]);
    if (c.trials == 0) {
      c.failure = "failed in source run";
    }
    out.cells.push_back(c);
  }
  if (header) {
    throw std::invalid_argument("results CSV is empty");
  }
  return out;
}

SuiteResult read_results(const std::string& path) { return parse_results_csv(read_text_file(path)); }

} // namespace wsnloc
