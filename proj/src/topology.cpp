#include "wsnloc/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace wsnloc {

namespace {

std::size_t exact_sqrt(std::size_t n) {
  auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  return side * side == n ? side : 0;
}

} // namespace

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
  case TopologyKind::random:
    return "random";
  case TopologyKind::grid:
    return "grid";
  case TopologyKind::hex_grid:
    return "hex_grid";
  }
  return "unknown";
}

TopologyKind parse_topology_kind(std::string_view text) {
  if (text == "random") {
    return TopologyKind::random;
  }
  if (text == "grid") {
    return TopologyKind::grid;
  }
  if (text == "hex_grid" || text == "hex-grid" || text == "hex") {
    return TopologyKind::hex_grid;
  }
  throw std::invalid_argument("unknown topology kind '" + std::string(text) + "'");
}

void TopologySpec::validate() const {
  if (n < 4) {
    throw std::invalid_argument("topology needs at least 4 nodes");
  }
  if (!(placement_noise_fraction >= 0.0) || !std::isfinite(placement_noise_fraction)) {
    throw std::invalid_argument("placement noise fraction must be finite and >= 0");
  }
  if (kind == TopologyKind::random) {
    if (!(area_side > 0.0) || !std::isfinite(area_side)) {
      throw std::invalid_argument("area side must be positive");
    }
    return;
  }
  if (!(grid_spacing > 0.0) || !std::isfinite(grid_spacing)) {
    throw std::invalid_argument("grid spacing must be positive");
  }
  if (exact_sqrt(n) == 0) {
    throw std::invalid_argument("grid topologies need a perfect-square node count, got " +
                                std::to_string(n));
  }
}

bool NodePositions::is_anchor(std::size_t id) const {
  return std::binary_search(anchor_ids.begin(), anchor_ids.end(), id);
}

std::vector<Point2> NodePositions::anchor_coords() const {
  std::vector<Point2> out;
  out.reserve(anchor_ids.size());
  for (std::size_t id : anchor_ids) {
    out.push_back(coords.at(id));
  }
  return out;
}

NetworkGraph::NetworkGraph(std::size_t n, double radio_range)
    : radio_range_(radio_range), adjacency_(n) {
  if (!(radio_range > 0.0)) {
    throw std::invalid_argument("radio range must be positive");
  }
}

void NetworkGraph::set_edge(std::size_t i, std::size_t j, double measured) {
  if (i >= size() || j >= size() || i == j) {
    throw std::invalid_argument("edge endpoints out of range or equal");
  }
  if (!(measured > 0.0) || !std::isfinite(measured)) {
    throw std::invalid_argument("edge distance must be positive and finite");
  }
  auto insert = [](std::vector<Neighbor>& list, std::size_t node, double d) {
    auto it = std::lower_bound(list.begin(), list.end(), node,
                               [](const Neighbor& a, std::size_t b) { return a.node < b; });
    if (it != list.end() && it->node == node) {
      it->distance = d;
      return false;
    }
    list.insert(it, Neighbor{node, d});
    return true;
  };
  const bool added = insert(adjacency_[i], j, measured);
  insert(adjacency_[j], i, measured);
  if (added) {
    ++edge_count_;
  }
}

bool NetworkGraph::has_edge(std::size_t i, std::size_t j) const {
  const auto& list = adjacency_.at(i);
  return std::binary_search(list.begin(), list.end(), Neighbor{j, 0.0},
                            [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
}

double NetworkGraph::edge(std::size_t i, std::size_t j) const {
  const auto& list = adjacency_.at(i);
  auto it = std::lower_bound(list.begin(), list.end(), j,
                             [](const Neighbor& a, std::size_t b) { return a.node < b; });
  if (it == list.end() || it->node != j) {
    throw std::out_of_range("no edge " + std::to_string(i) + "-" + std::to_string(j));
  }
  return it->distance;
}

std::vector<NetworkGraph::Edge> NetworkGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    for (const Neighbor& nb : adjacency_[i]) {
      if (nb.node > i) {
        out.push_back(Edge{i, nb.node, nb.distance});
      }
    }
  }
  return out;
}

NodePositions generate_positions(const TopologySpec& spec, Seed seed) {
  spec.validate();
  Rng rng(seed);
  NodePositions out;
  out.coords.reserve(spec.n);

  if (spec.kind == TopologyKind::random) {
    for (std::size_t i = 0; i < spec.n; ++i) {
      const double x = rng.uniform(0.0, spec.area_side);
      const double y = rng.uniform(0.0, spec.area_side);
      out.coords.push_back({x, y});
    }
    return out;
  }

  const std::size_t side = exact_sqrt(spec.n);
  const double s = spec.grid_spacing;
  const double sigma = spec.placement_noise_fraction * s;
  const bool hex = spec.kind == TopologyKind::hex_grid;
  const double pitch = hex ? s * std::sqrt(3.0) / 2.0 : s;
  for (std::size_t row = 0; row < side; ++row) {
    const double offset = (hex && row % 2 == 1) ? s / 2.0 : 0.0;
    for (std::size_t col = 0; col < side; ++col) {
      double x = static_cast<double>(col) * s + offset;
      double y = static_cast<double>(row) * pitch;
      if (sigma > 0.0) {
        x += sigma * rng.normal();
        y += sigma * rng.normal();
      }
      out.coords.push_back({x, y});
    }
  }
  return out;
}

NodePositions select_anchors(const NodePositions& positions, std::size_t count, Seed seed) {
  const std::size_t n = positions.size();
  if (count < 3) {
    throw std::invalid_argument("at least 3 anchors are needed for 2-D alignment");
  }
  if (count > n) {
    throw std::invalid_argument("more anchors requested than nodes");
  }
  Rng rng(seed);
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(ids[i], ids[j]);
  }
  NodePositions out = positions;
  out.anchor_ids.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(out.anchor_ids.begin(), out.anchor_ids.end());
  return out;
}

NetworkGraph build_graph(const NodePositions& positions, double radio_range,
                         double range_error_fraction, Seed seed) {
  if (!(radio_range > 0.0) || !std::isfinite(radio_range)) {
    throw std::invalid_argument("radio range must be positive");
  }
  if (!(range_error_fraction >= 0.0 && range_error_fraction <= 0.5)) {
    throw std::invalid_argument("range error fraction must lie in [0, 0.5]");
  }
  const std::size_t n = positions.size();
  const double floor = 1e-9 * radio_range;
  Rng rng(seed);
  NetworkGraph graph(n, radio_range);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(positions.coords[i], positions.coords[j]);
      if (d > radio_range) {
        continue;
      }
      double measured = d;
      if (range_error_fraction > 0.0) {
        measured *= 1.0 + rng.uniform(-range_error_fraction, range_error_fraction);
      }
      graph.set_edge(i, j, std::max(measured, floor));
    }
  }
  return graph;
}

double average_connectivity(const NetworkGraph& graph) {
  if (graph.size() == 0) {
    return 0.0;
  }
  return 2.0 * static_cast<double>(graph.edge_count()) / static_cast<double>(graph.size());
}

bool is_connected(const NetworkGraph& graph) {
  const std::size_t n = graph.size();
  if (n <= 1) {
    return true;
  }
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (const Neighbor& nb : graph.neighbors(u)) {
      if (!seen[nb.node]) {
        seen[nb.node] = true;
        ++reached;
        queue.push_back(nb.node);
      }
    }
  }
  return reached == n;
}

AttemptSeeds attempt_seeds(Seed seed, std::size_t attempt) {
  return AttemptSeeds{derive_seed(seed, {attempt, 1}), derive_seed(seed, {attempt, 2}),
                      derive_seed(seed, {attempt, 3})};
}

Network generate_connected_network(const NetworkRequest& request, Seed seed,
                                   std::size_t first_attempt) {
  request.topology.validate();
  for (std::size_t attempt = first_attempt; attempt < kMaxConnectAttempts; ++attempt) {
    const AttemptSeeds seeds = attempt_seeds(seed, attempt);
    NodePositions positions = generate_positions(request.topology, seeds.positions);
    NetworkGraph graph =
        build_graph(positions, request.radio_range, request.range_error_fraction, seeds.noise);
    if (!is_connected(graph)) {
      continue;
    }
    return Network{select_anchors(positions, request.anchor_count, seeds.anchors),
                   std::move(graph), attempt + 1};
  }
  throw DisconnectedGraphError("no connected network after " +
                               std::to_string(kMaxConnectAttempts) + " attempts (R = " +
                               std::to_string(request.radio_range) + ")");
}

} // namespace wsnloc
