#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "wsnloc/geometry.hpp"
#include "wsnloc/mds.hpp"
#include "wsnloc/topology.hpp"

namespace wsnloc {

class DegenerateAnchorsError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// p -> scale * rotation * p + translation. `rotation` is row-major 2x2
/// and may be a reflection.
struct Transform2D {
  double scale = 1.0;
  std::array<double, 4> rotation{1.0, 0.0, 0.0, 1.0};
  Point2 translation{};

  Point2 operator()(const Point2& p) const {
    return {scale * (rotation[0] * p.x + rotation[1] * p.y) + translation.x,
            scale * (rotation[2] * p.x + rotation[3] * p.y) + translation.y};
  }
  double determinant() const { return rotation[0] * rotation[3] - rotation[1] * rotation[2]; }
};

/// Least-squares similarity transform (reflection allowed) taking `from`
/// onto `to`. Needs at least 3 points; throws DegenerateAnchorsError when
/// `from` is collinear or coincident.
Transform2D fit_transform(std::span<const Point2> from, std::span<const Point2> to);

/// Sum of squared distances between t(from[i]) and to[i].
double transform_residual(const Transform2D& t, std::span<const Point2> from,
                          std::span<const Point2> to);

/// Absolute positions; anchor_ids are left empty for the caller to fill.
NodePositions apply_transform(const RelativeMap& map, const Transform2D& t);

struct NodeError {
  std::size_t node;
  double distance;
};

struct ErrorReport {
  double error_percent = 0.0;
  std::vector<NodeError> per_node_errors;
  std::size_t n = 0;
  std::size_t anchors = 0;
  double radio_range = 0.0;
};

/// 100 * sum over non-anchor nodes of |estimated - true| / ((n - N) R).
/// Anchors are taken from `truth`.
ErrorReport localization_error(const NodePositions& estimated, const NodePositions& truth,
                               double radio_range);

/// Relative map -> absolute map, fitted on the anchors of `truth`.
NodePositions align_to_anchors(const RelativeMap& map, const NodePositions& truth);

} // namespace wsnloc
