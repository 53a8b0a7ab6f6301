#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "wsnloc/apsp.hpp"
#include "wsnloc/geometry.hpp"
#include "wsnloc/matrix.hpp"

namespace wsnloc {

class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// B = -1/2 J D^(2) J with J = I - 11^T / n.
Matrix double_center(const DistanceMatrix& d, Execution exec = Execution::parallel);

struct EigenPairs {
  /// Descending.
  std::vector<double> values;
  /// n x k, column j is the eigenvector of values[j]. Sign fixed so the
  /// largest-magnitude entry (lowest index on ties) is non-negative.
  Matrix vectors;
};

struct JacobiOptions {
  double relative_tolerance = 1e-12;
  int max_sweeps = 100;
};

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi,
/// sorted descending. Throws ConvergenceError when the off-diagonal
/// norm does not fall below tolerance * ||B||_F within max_sweeps.
EigenPairs symmetric_eigen(const Matrix& b, JacobiOptions options = {});

/// The k algebraically largest eigenpairs of b.
EigenPairs symmetric_eigen_top_k(const Matrix& b, std::size_t k, JacobiOptions options = {});

struct RelativeMap {
  std::vector<Point2> coords;
  std::vector<double> eigenvalues_used;
  std::vector<double> residual_spectrum;
};

/// Classical MDS embedding in `dims` (1 or 2) dimensions. Negative
/// retained eigenvalues are clamped to zero.
RelativeMap classical_mds(const DistanceMatrix& d, std::size_t dims = 2);

} // namespace wsnloc
