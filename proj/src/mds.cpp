#include "wsnloc/mds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wsnloc {

Matrix double_center(const DistanceMatrix& d, Execution exec) {
  if (d.rows() != d.cols()) {
    throw std::invalid_argument("double_center needs a square matrix");
  }
  const std::size_t n = d.rows();
  Matrix b(n, n);
  if (n == 0) {
    return b;
  }
  const auto inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> row_mean(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (double v : d.row(i)) {
      s += v * v;
    }
    row_mean[i] = s * inv_n;
  }
  const double grand_mean = std::accumulate(row_mean.begin(), row_mean.end(), 0.0) * inv_n;

  // D is symmetric, so column means equal row means.
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for if (exec == Execution::parallel)
  for (std::ptrdiff_t si = 0; si < count; ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t j = 0; j < n; ++j) {
      const double sq = d(i, j) * d(i, j);
      b(i, j) = -0.5 * (sq - row_mean[i] - row_mean[j] + grand_mean);
    }
  }
  // Exact symmetry regardless of rounding order.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (b(i, j) + b(j, i));
      b(i, j) = m;
      b(j, i) = m;
    }
  }
  return b;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) {
        s += a(i, j) * a(i, j);
      }
    }
  }
  return std::sqrt(s);
}

} // namespace

EigenPairs symmetric_eigen(const Matrix& b, JacobiOptions options) {
  if (b.rows() != b.cols()) {
    throw std::invalid_argument("eigensolver needs a square matrix");
  }
  const std::size_t n = b.rows();
  Matrix a = b;
  // Rows of vt are the eigenvectors, so rotations touch contiguous memory.
  Matrix vt = Matrix::identity(n);

  const double scale = frobenius_norm(b);
  const double target = options.relative_tolerance * scale;
  bool converged = scale == 0.0 || off_diagonal_norm(a) <= target;

  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;

        // A <- G^T A G on rows p and q, then mirror into columns.
        auto rp = a.row(p);
        auto rq = a.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double xp = rp[k];
          const double xq = rq[k];
          rp[k] = c * xp - s * xq;
          rq[k] = s * xp + c * xq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          a(k, p) = rp[k];
          a(k, q) = rq[k];
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        auto vp = vt.row(p);
        auto vq = vt.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double xp = vp[k];
          const double xq = vq[k];
          vp[k] = c * xp - s * xq;
          vq[k] = s * xp + c * xq;
        }
      }
    }
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged) {
    throw ConvergenceError("Jacobi eigensolver did not converge in " +
                           std::to_string(options.max_sweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenPairs out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.values[col] = a(src, src);
    auto v = vt.row(src);
    std::size_t pivot = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (std::abs(v[k]) > std::abs(v[pivot])) {
        pivot = k;
      }
    }
    const double sign = v[pivot] < 0.0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      out.vectors(k, col) = sign * v[k];
    }
  }
  return out;
}

EigenPairs symmetric_eigen_top_k(const Matrix& b, std::size_t k, JacobiOptions options) {
  if (k < 1 || k > b.rows()) {
    throw std::invalid_argument("k must lie in [1, n]");
  }
  EigenPairs full = symmetric_eigen(b, options);
  if (k == b.rows()) {
    return full;
  }
  EigenPairs out;
  out.values.assign(full.values.begin(), full.values.begin() + static_cast<std::ptrdiff_t>(k));
  out.vectors = Matrix(b.rows(), k);
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      out.vectors(i, j) = full.vectors(i, j);
    }
  }
  return out;
}

RelativeMap classical_mds(const DistanceMatrix& d, std::size_t dims) {
  if (dims < 1 || dims > 2) {
    throw std::invalid_argument("classical_mds supports 1 or 2 dimensions");
  }
  validate_distance_matrix(d);
  const std::size_t n = d.rows();
  if (n < dims) {
    throw std::invalid_argument("fewer points than embedding dimensions");
  }
  const EigenPairs eig = symmetric_eigen(double_center(d, Execution::serial));

  RelativeMap map;
  map.coords.assign(n, Point2{});
  map.eigenvalues_used.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(dims));
  map.residual_spectrum.assign(eig.values.begin() + static_cast<std::ptrdiff_t>(dims), eig.values.end());
  for (std::size_t j = 0; j < dims; ++j) {
    const double root = std::sqrt(std::max(eig.values[j], 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      const double v = eig.vectors(i, j) * root;
      if (j == 0) {
        map.coords[i].x = v;
      } else {
        map.coords[i].y = v;
      }
    }
  }
  return map;
}

} // namespace wsnloc
