#include "wsnloc/align.hpp"

#include <cmath>

namespace wsnloc {

namespace {

Point2 centroid(std::span<const Point2> pts) {
  Point2 c{};
  for (const Point2& p : pts) {
    c.x += p.x;
    c.y += p.y;
  }
  const auto n = static_cast<double>(pts.size());
  return {c.x / n, c.y / n};
}

} // namespace

Transform2D fit_transform(std::span<const Point2> from, std::span<const Point2> to) {
  if (from.size() != to.size()) {
    throw std::invalid_argument("anchor sets differ in size");
  }
  if (from.size() < 3) {
    throw std::invalid_argument("at least 3 anchors are needed for alignment");
  }
  const Point2 cf = centroid(from);
  const Point2 ct = centroid(to);

  // Gram of centered `from`, and cross-covariance M = sum to_c * from_c^T.
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  double m11 = 0.0, m12 = 0.0, m21 = 0.0, m22 = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    const double fx = from[i].x - cf.x;
    const double fy = from[i].y - cf.y;
    const double tx = to[i].x - ct.x;
    const double ty = to[i].y - ct.y;
    sxx += fx * fx;
    sxy += fx * fy;
    syy += fy * fy;
    m11 += tx * fx;
    m12 += tx * fy;
    m21 += ty * fx;
    m22 += ty * fy;
  }

  // Singular values of the centered N x 2 matrix from its 2x2 Gram.
  const double half_trace = 0.5 * (sxx + syy);
  const double disc = std::hypot(0.5 * (sxx - syy), sxy);
  const double sigma_max = std::sqrt(std::max(half_trace + disc, 0.0));
  const double sigma_min = std::sqrt(std::max(half_trace - disc, 0.0));
  if (!(sigma_max > 0.0) || sigma_min < 1e-8 * sigma_max) {
    throw DegenerateAnchorsError("anchor configuration is collinear or coincident");
  }

  // Best orthogonal factor of M: compare the best proper rotation with the
  // best reflection. The winning value is the nuclear norm of M.
  const double rot_value = std::hypot(m11 + m22, m21 - m12);
  const double ref_value = std::hypot(m11 - m22, m12 + m21);
  Transform2D t;
  double value = 0.0;
  if (rot_value >= ref_value) {
    const double phi = std::atan2(m21 - m12, m11 + m22);
    const double c = std::cos(phi), s = std::sin(phi);
    t.rotation = {c, -s, s, c};
    value = rot_value;
  } else {
    const double phi = std::atan2(m12 + m21, m11 - m22);
    const double c = std::cos(phi), s = std::sin(phi);
    t.rotation = {c, s, s, -c};
    value = ref_value;
  }
  t.scale = value / (sxx + syy);
  if (!(t.scale > 0.0)) {
    throw DegenerateAnchorsError("target anchors are coincident");
  }
  const Point2 moved{t.scale * (t.rotation[0] * cf.x + t.rotation[1] * cf.y),
                     t.scale * (t.rotation[2] * cf.x + t.rotation[3] * cf.y)};
  t.translation = {ct.x - moved.x, ct.y - moved.y};
  return t;
}

double transform_residual(const Transform2D& t, std::span<const Point2> from,
                          std::span<const Point2> to) {
  double s = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    const Point2 p = t(from[i]);
    const double dx = p.x - to[i].x;
    const double dy = p.y - to[i].y;
    s += dx * dx + dy * dy;
  }
  return s;
}

NodePositions apply_transform(const RelativeMap& map, const Transform2D& t) {
  NodePositions out;
  out.coords.reserve(map.coords.size());
  for (const Point2& p : map.coords) {
    out.coords.push_back(t(p));
  }
  return out;
}

ErrorReport localization_error(const NodePositions& estimated, const NodePositions& truth,
                               double radio_range) {
  if (estimated.size() != truth.size()) {
    throw std::invalid_argument("estimated and true positions differ in size");
  }
  if (!(radio_range > 0.0)) {
    throw std::invalid_argument("radio range must be positive");
  }
  if (!estimated.anchor_ids.empty() && estimated.anchor_ids != truth.anchor_ids) {
    throw std::invalid_argument("estimated and true positions use different anchors");
  }
  const std::size_t n = truth.size();
  const std::size_t anchors = truth.anchor_ids.size();
  if (anchors >= n) {
    throw std::invalid_argument("error is undefined when every node is an anchor");
  }
  ErrorReport report;
  report.n = n;
  report.anchors = anchors;
  report.radio_range = radio_range;
  report.per_node_errors.reserve(n - anchors);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (truth.is_anchor(i)) {
      continue;
    }
    const double e = distance(estimated.coords[i], truth.coords[i]);
    report.per_node_errors.push_back({i, e});
    total += e;
  }
  report.error_percent = 100.0 * total / (static_cast<double>(n - anchors) * radio_range);
  return report;
}

NodePositions align_to_anchors(const RelativeMap& map, const NodePositions& truth) {
  if (map.coords.size() != truth.size()) {
    throw std::invalid_argument("relative map and anchor positions differ in size");
  }
  std::vector<Point2> relative;
  relative.reserve(truth.anchor_ids.size());
  for (std::size_t id : truth.anchor_ids) {
    relative.push_back(map.coords[id]);
  }
  const std::vector<Point2> known = truth.anchor_coords();
  NodePositions out = apply_transform(map, fit_transform(relative, known));
  out.anchor_ids = truth.anchor_ids;
  return out;
}

} // namespace wsnloc
