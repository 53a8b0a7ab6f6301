#include "wsnloc/apsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace wsnloc {

double frobenius_norm(const Matrix& m) {
  double sum = 0.0;
  for (double v : m.data()) {
    sum += v * v;
  }
  return std::sqrt(sum);
}

std::string_view to_string(RefineMode mode) {
  return mode == RefineMode::all_hops ? "all-hops" : "two-hop-only";
}

RefineMode parse_refine_mode(std::string_view text) {
  if (text == "all-hops" || text == "all_hops") {
    return RefineMode::all_hops;
  }
  if (text == "two-hop-only" || text == "two_hop_only") {
    return RefineMode::two_hop_only;
  }
  throw std::invalid_argument("unknown refine mode '" + std::string(text) + "'");
}

double refine_compose(double d1, double d2, double radio_range) {
  if (!(d1 > 0.0) || !(d2 > 0.0) || !(radio_range > 0.0)) {
    throw std::invalid_argument("refine_compose needs positive lengths");
  }
  const double cos_theta =
      std::clamp((d1 * d1 + d2 * d2 - radio_range * radio_range) / (2.0 * d1 * d2), -1.0, 1.0);
  const double theta = std::acos(cos_theta);
  const double a2 = d1 * d1 + d2 * d2 + 2.0 * d1 * d2 * std::sin(0.5 * theta);
  return std::sqrt(a2);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Label {
  double dist;
  std::size_t node;
  bool operator>(const Label& o) const {
    return dist != o.dist ? dist > o.dist : node > o.node;
  }
};
using MinHeap = std::priority_queue<Label, std::vector<Label>, std::greater<>>;

// Single-source additive Dijkstra into `row`.
void dijkstra_classic(const NetworkGraph& graph, std::size_t src, std::span<double> row) {
  std::fill(row.begin(), row.end(), kInf);
  std::vector<bool> settled(graph.size(), false);
  MinHeap heap;
  row[src] = 0.0;
  heap.push({0.0, src});
  while (!heap.empty()) {
    const Label top = heap.top();
    heap.pop();
    if (settled[top.node]) {
      continue;
    }
    settled[top.node] = true;
    for (const Neighbor& nb : graph.neighbors(top.node)) {
      const double cand = top.dist + nb.distance;
      if (cand < row[nb.node]) {
        row[nb.node] = cand;
        heap.push({cand, nb.node});
      }
    }
  }
}

// Single-source Dijkstra with the arc-midpoint extension rule. Direct
// neighbors of `src` are pinned to their measured distance.
void dijkstra_refined(const NetworkGraph& graph, double radio_range, RefineMode mode,
                      std::size_t src, std::span<double> row) {
  const std::size_t n = graph.size();
  std::fill(row.begin(), row.end(), kInf);
  std::vector<bool> settled(n, false);
  std::vector<bool> pinned(n, false);
  MinHeap heap;
  row[src] = 0.0;
  pinned[src] = true;
  settled[src] = true;
  for (const Neighbor& nb : graph.neighbors(src)) {
    row[nb.node] = nb.distance;
    pinned[nb.node] = true;
    heap.push({nb.distance, nb.node});
  }
  while (!heap.empty()) {
    const Label top = heap.top();
    heap.pop();
    if (settled[top.node]) {
      continue;
    }
    settled[top.node] = true;
    const bool refine = mode == RefineMode::all_hops || pinned[top.node];
    for (const Neighbor& nb : graph.neighbors(top.node)) {
      if (pinned[nb.node] || settled[nb.node]) {
        continue;
      }
      const double cand = refine ? refine_compose(top.dist, nb.distance, radio_range)
                                 : top.dist + nb.distance;
      if (cand < row[nb.node]) {
        row[nb.node] = cand;
        heap.push({cand, nb.node});
      }
    }
  }
}

void throw_if_unreachable(const DistanceMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (!std::isfinite(d(i, j))) {
        throw DisconnectedGraphError("graph is disconnected: node " + std::to_string(j) +
                                     " unreachable from node " + std::to_string(i));
      }
    }
  }
}

template <class RowKernel>
DistanceMatrix run_sources(std::size_t n, Execution exec, RowKernel&& kernel) {
  DistanceMatrix d(n, n);
  if (exec == Execution::parallel) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t s = 0; s < count; ++s) {
      const auto src = static_cast<std::size_t>(s);
      kernel(src, d.row(src));
    }
  } else {
    for (std::size_t src = 0; src < n; ++src) {
      kernel(src, d.row(src));
    }
  }
  return d;
}

} // namespace

DistanceMatrix apsp_classic(const NetworkGraph& graph, Execution exec) {
  DistanceMatrix d = run_sources(graph.size(), exec, [&](std::size_t src, std::span<double> row) {
    dijkstra_classic(graph, src, row);
  });
  throw_if_unreachable(d);
  // Both directions are lengths of real paths; keep the shorter.
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = i + 1; j < d.cols(); ++j) {
      const double m = std::min(d(i, j), d(j, i));
      d(i, j) = m;
      d(j, i) = m;
    }
  }
  return d;
}

DistanceMatrix apsp_refined(const NetworkGraph& graph, double radio_range, RefineMode mode,
                            Execution exec) {
  if (!(radio_range > 0.0)) {
    throw std::invalid_argument("radio range must be positive");
  }
  DistanceMatrix d = run_sources(graph.size(), exec, [&](std::size_t src, std::span<double> row) {
    dijkstra_refined(graph, radio_range, mode, src, row);
  });
  throw_if_unreachable(d);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = i + 1; j < d.cols(); ++j) {
      const double m = 0.5 * (d(i, j) + d(j, i));
      d(i, j) = m;
      d(j, i) = m;
    }
  }
  return d;
}

void validate_distance_matrix(const DistanceMatrix& d) {
  if (d.rows() != d.cols()) {
    throw std::invalid_argument("distance matrix must be square");
  }
  for (std::size_t i = 0; i < d.rows(); ++i) {
    if (d(i, i) != 0.0) {
      throw std::invalid_argument("distance matrix diagonal must be zero");
    }
    for (std::size_t j = 0; j < d.cols(); ++j) {
      const double v = d(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("distance matrix entries must be finite and non-negative");
      }
      if (v != d(j, i)) {
        throw std::invalid_argument("distance matrix must be symmetric");
      }
    }
  }
}

} // namespace wsnloc
