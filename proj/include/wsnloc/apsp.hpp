#pragma once

#include <string_view>

#include "wsnloc/matrix.hpp"
#include "wsnloc/topology.hpp"

namespace wsnloc {

/// Symmetric n x n matrix of estimated pairwise distances, zero diagonal.
using DistanceMatrix = Matrix;

/// Selects between the OpenMP kernel and the single-threaded reference.
enum class Execution { serial, parallel };

/// How far along a path the arc-midpoint composition is applied.
enum class RefineMode {
  /// Every relaxation composes the accumulated estimate with the next hop.
  all_hops,
  /// Only src -> neighbor -> v compositions are refined; longer paths extend
  /// the refined two-hop estimates additively.
  two_hop_only,
};

std::string_view to_string(RefineMode mode);
/// Accepts "all-hops" and "two-hop-only" (underscores also accepted).
RefineMode parse_refine_mode(std::string_view text);

/// Distance from A to C given |AB| = d1, |BC| = d2 and radio range R,
/// placing C at the midpoint of the arc of positions that are out of
/// A's range:
///   a^2 = d1^2 + d2^2 + 2 d1 d2 sin(theta / 2),
///   theta = acos(clamp((d1^2 + d2^2 - R^2) / (2 d1 d2), -1, 1)).
/// Throws std::invalid_argument unless all arguments are positive.
double refine_compose(double d1, double d2, double radio_range);

/// Additive shortest paths, Dijkstra from every source.
/// Throws DisconnectedGraphError naming an unreachable pair.
DistanceMatrix apsp_classic(const NetworkGraph& graph, Execution exec = Execution::parallel);

/// Dijkstra with refine_compose as the path-extension rule. Direct
/// neighbors keep their measured distance. The result is symmetrized by
/// averaging the two directions.
DistanceMatrix apsp_refined(const NetworkGraph& graph, double radio_range,
                            RefineMode mode = RefineMode::two_hop_only,
                            Execution exec = Execution::parallel);

/// Checks the DistanceMatrix invariants; throws std::invalid_argument.
void validate_distance_matrix(const DistanceMatrix& d);

} // namespace wsnloc
