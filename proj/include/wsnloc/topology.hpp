#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wsnloc/geometry.hpp"
#include "wsnloc/rng.hpp"

namespace wsnloc {

enum class TopologyKind { random, grid, hex_grid };

std::string_view to_string(TopologyKind kind);
/// Accepts "random", "grid", "hex_grid" (also "hex-grid").
TopologyKind parse_topology_kind(std::string_view text);

/// Deployment parameters. Lengths are in units of r.
struct TopologySpec {
  TopologyKind kind = TopologyKind::random;
  std::size_t n = 100;
  double area_side = 10.0;
  /// 10x10 lattice spanning the same 10r extent as the random field.
  double grid_spacing = 10.0 / 9.0;
  /// Gaussian placement sigma as a fraction of grid_spacing.
  double placement_noise_fraction = 0.05;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct NodePositions {
  std::vector<Point2> coords;
  /// Sorted, distinct.
  std::vector<std::size_t> anchor_ids;

  std::size_t size() const { return coords.size(); }
  bool is_anchor(std::size_t id) const;
  std::vector<Point2> anchor_coords() const;
};

struct Neighbor {
  std::size_t node;
  double distance; // measured
};

/// Undirected radio graph with measured edge lengths.
class NetworkGraph {
public:
  NetworkGraph(std::size_t n, double radio_range);

  /// Inserts or replaces the undirected edge (i, j).
  void set_edge(std::size_t i, std::size_t j, double measured);

  std::size_t size() const { return adjacency_.size(); }
  double radio_range() const { return radio_range_; }
  std::size_t edge_count() const { return edge_count_; }

  /// Neighbors of `i`, sorted by node id.
  const std::vector<Neighbor>& neighbors(std::size_t i) const { return adjacency_[i]; }
  bool has_edge(std::size_t i, std::size_t j) const;
  /// Throws std::out_of_range if there is no edge.
  double edge(std::size_t i, std::size_t j) const;

  struct Edge {
    std::size_t i;
    std::size_t j;
    double distance;
  };
  /// Every edge once with i < j, ordered by (i, j).
  std::vector<Edge> edges() const;

private:
  double radio_range_;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<Neighbor>> adjacency_;
};

class DisconnectedGraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

NodePositions generate_positions(const TopologySpec& spec, Seed seed);

/// Returns a copy of `positions` with `count` anchors drawn uniformly
/// without replacement.
NodePositions select_anchors(const NodePositions& positions, std::size_t count, Seed seed);

/// Edge for every pair within `radio_range`; measured length is the true
/// length times (1 + u), u ~ U[-range_error_fraction, +range_error_fraction],
/// one draw per unordered pair in (i, j) order.
NetworkGraph build_graph(const NodePositions& positions, double radio_range,
                         double range_error_fraction, Seed seed);

double average_connectivity(const NetworkGraph& graph);

bool is_connected(const NetworkGraph& graph);

/// A deployment, its anchors and the measured graph built on top of it.
struct Network {
  NodePositions truth;
  NetworkGraph graph;
  std::size_t attempts = 1;
};

struct NetworkRequest {
  TopologySpec topology;
  double radio_range = 2.0;
  double range_error_fraction = 0.0;
  std::size_t anchor_count = 10;
};

inline constexpr std::size_t kMaxConnectAttempts = 1000;

/// Seeds for attempt k of network generation.
struct AttemptSeeds {
  Seed positions;
  Seed noise;
  Seed anchors;
};
AttemptSeeds attempt_seeds(Seed seed, std::size_t attempt);

/// Regenerates with derived seeds until the graph is connected.
/// Throws DisconnectedGraphError after kMaxConnectAttempts.
Network generate_connected_network(const NetworkRequest& request, Seed seed,
                                   std::size_t first_attempt = 0);

} // namespace wsnloc
