#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wsnloc/align.hpp"
#include "wsnloc/apsp.hpp"
#include "wsnloc/mds.hpp"
#include "wsnloc/topology.hpp"

namespace wsnloc {

/// Shortest decimal form that round-trips, independent of locale.
std::string format_double(double value);
/// Inverse of format_double; accepts "nan"/"inf". Throws std::invalid_argument.
double parse_double(std::string_view text);
std::size_t parse_size(std::string_view text);

std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

/// `id,x,y,is_anchor`
std::string positions_csv(const NodePositions& positions);
/// Rows may leave x,y empty for nodes with unknown location; those
/// coordinates come back as NaN.
NodePositions parse_positions_csv(std::string_view text);

/// `i,j,distance`, one row per undirected edge.
std::string edges_csv(const NetworkGraph& graph);
/// n is taken from `node_count` when non-zero, else from the largest id.
NetworkGraph parse_edges_csv(std::string_view text, double radio_range,
                             std::size_t node_count = 0);

/// First line is n, then n rows of n values.
std::string distance_matrix_csv(const DistanceMatrix& d);

/// `id,x,y`
std::string relative_map_csv(const RelativeMap& map);
/// `index,eigenvalue` over used then residual eigenvalues.
std::string spectrum_csv(const RelativeMap& map);

std::string error_report_header();
/// `algorithm,error_percent,n,anchors,R`
std::string error_report_row(std::string_view algorithm, const ErrorReport& report);
/// `node,error`
std::string per_node_errors_csv(const ErrorReport& report);

} // namespace wsnloc
