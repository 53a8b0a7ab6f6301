#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wsnloc/align.hpp"
#include "wsnloc/apsp.hpp"
#include "wsnloc/mds.hpp"
#include "wsnloc/topology.hpp"

namespace wsnloc {

enum class Algorithm { mdsmap, imds };

std::string_view to_string(Algorithm algorithm);

/// Result of one localization pipeline on one network.
struct Localization {
  DistanceMatrix distances;
  RelativeMap relative;
  NodePositions estimated;
};

/// APSP (classic or refined) -> classical MDS -> anchor alignment.
/// Anchors and their coordinates are read from `anchors`.
Localization localize(const NetworkGraph& graph, const NodePositions& anchors, Algorithm algorithm,
                      RefineMode mode = RefineMode::two_hop_only,
                      Execution exec = Execution::serial);

struct TrialConfig {
  TopologySpec topology;
  std::size_t anchor_count = 10;
  double radio_range = 2.0;
  double range_error_fraction = 0.0;
  Seed seed = 0;
  RefineMode refine = RefineMode::two_hop_only;
};

struct TrialResult {
  double connectivity = 0.0;
  double error_mdsmap = 0.0;
  double error_imds = 0.0;
  Seed seed = 0;
  std::size_t attempts = 1;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

/// Runs MDS-MAP and IMDS on the same network and anchors.
TrialResult run_trial(const TrialConfig& config);

struct CellKey {
  TopologyKind topology = TopologyKind::random;
  std::size_t anchors = 10;
  double radio_range = 2.0;
  double range_error = 0.0;
};

/// Lexicographic on (topology name, anchors, R, range_error).
bool operator<(const CellKey& a, const CellKey& b);
bool operator==(const CellKey& a, const CellKey& b);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0; // sample standard deviation, 0 for one trial
};

struct CellResult {
  CellKey key;
  std::size_t trials = 0;
  Summary connectivity;
  Summary error_mdsmap;
  Summary error_imds;
  /// Set when any trial in the cell failed; statistics are then NaN.
  std::optional<std::string> failure;
};

struct SuiteResult {
  /// Sorted by key.
  std::vector<CellResult> cells;

  std::size_t failed_cells() const;
};

struct Sweep {
  /// Node count, field size, spacing and placement noise shared by all
  /// topologies; `kind` is overridden per cell.
  TopologySpec topology_base;
  std::vector<TopologyKind> topologies;
  std::vector<std::size_t> anchor_counts;
  std::vector<double> radio_ranges;
  std::vector<double> range_errors;
  RefineMode refine = RefineMode::two_hop_only;

  std::vector<CellKey> cells() const;
};

/// 3 topologies x {3,4,6,10} anchors x 5 radio ranges x 6 range-error
/// levels = 360 cells.
Sweep default_sweep();

/// Same as default_sweep() with the 7 range-error levels 0..30%.
Sweep default_sweep_full_range_error();

/// Seed of trial `trial` in `cell`, independent of execution order.
Seed trial_seed(Seed base_seed, const CellKey& cell, std::size_t trial);

Summary summarize(const std::vector<double>& values);

struct SuiteOptions {
  std::size_t trials = 30;
  Seed base_seed = 2013;
  /// 0 keeps the OpenMP default.
  int threads = 0;
  Execution exec = Execution::parallel;
  /// Called after each cell completes, in cell order.
  std::function<void(const CellResult&, std::size_t index, std::size_t total)> on_cell;
};

SuiteResult run_suite(const Sweep& sweep, const SuiteOptions& options);

/// Columns: topology,anchors,R,range_error,connectivity_mean,
/// err_mdsmap_mean,err_mdsmap_std,err_imds_mean,err_imds_std,trials
void export_results(const SuiteResult& result, const std::string& path);
std::string results_csv(const SuiteResult& result);
SuiteResult read_results(const std::string& path);
SuiteResult parse_results_csv(const std::string& text);

} // namespace wsnloc
