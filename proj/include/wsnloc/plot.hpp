#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsnloc/experiment.hpp"

namespace wsnloc {

enum class FigureKind {
  /// MDS-MAP vs IMDS error over connectivity.
  error_vs_connectivity,
  /// IMDS error over connectivity, one series per anchor count.
  error_vs_anchors,
  /// IMDS error over range error, one series per anchor count.
  error_vs_range_error,
};

std::string_view to_string(FigureKind kind);
FigureKind parse_figure_kind(std::string_view text);

/// Which cells a figure draws from. Unset fields take the defaults noted.
struct PlotFilter {
  TopologyKind topology = TopologyKind::random;
  /// error_vs_connectivity only; default 10.
  std::optional<std::size_t> anchors;
  /// error_vs_connectivity and error_vs_anchors; default 0.
  std::optional<double> range_error;
  /// error_vs_range_error only; default is the median radio range present.
  std::optional<double> radio_range;
};

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Figure {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Selects and orders the figure's data. Throws std::invalid_argument when
/// no cell matches.
Figure build_figure(const SuiteResult& result, FigureKind kind, const PlotFilter& filter = {});

/// Self-contained SVG. Every marker carries its exact CSV values in
/// data-x / data-y attributes.
std::string render_svg(const Figure& figure);

void emit_plot(const SuiteResult& result, FigureKind kind, const std::string& path,
               const PlotFilter& filter = {});

} // namespace wsnloc
