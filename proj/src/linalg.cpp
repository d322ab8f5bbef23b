#include "compsem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "compsem/errors.hpp"

namespace compsem {

namespace {

void require_same_dim(const Vector& a, const Vector& b, const char* op) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

double flat_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / std::sqrt(aa * bb);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw std::invalid_argument("Matrix: value count " +
                                std::to_string(values_.size()) +
                                " does not match " + std::to_string(rows_) +
                                "x" + std::to_string(cols_));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector add(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "add");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector pointwise_mult(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "pointwise_mult");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Matrix outer(const Vector& a, const Vector& b) {
  Matrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
  return m;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("hadamard: shape mismatch (" +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < out.values().size(); ++i)
    out.values()[i] = a.values()[i] * b.values()[i];
  return out;
}

Vector matvec(const Matrix& m, const Vector& v, bool transposed) {
  if (!transposed) {
    if (m.cols() != v.size())
      throw std::invalid_argument("matvec: " + std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()) +
                                  " incompatible with vector of dim " +
                                  std::to_string(v.size()));
    Vector out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }
  if (m.rows() != v.size())
    throw std::invalid_argument("matvec: " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) +
                                "^T incompatible with vector of dim " +
                                std::to_string(v.size()));
  Vector out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += m(i, j) * v[i];
  return out;
}

double dot(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(const Vector& v) { return std::sqrt(dot(v, v)); }

double cosine(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "cosine");
  return flat_cosine(a, b);
}

double cosine(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("cosine: shape mismatch (" +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
  return flat_cosine(a.values(), b.values());
}

Vector l2_normalize(const Vector& v) {
  const double n = norm(v);
  if (n == 0.0) return v;
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / n;
  return out;
}

// One-sided Jacobi: orthogonalize the columns of the working matrix by plane
// rotations accumulated into V; column norms converge to the singular values.
// The working matrix is the input or its transpose, whichever has rows >= cols.
SvdResult truncated_svd(const Matrix& m, std::size_t k, int max_sweeps) {
  const std::size_t min_dim = std::min(m.rows(), m.cols());
  if (k == 0 || k > min_dim) {
    throw std::invalid_argument(
        "truncated_svd: k=" + std::to_string(k) + " out of range for " +
        std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  }

  const bool flip = m.rows() < m.cols();
  const std::size_t n = flip ? m.cols() : m.rows();  // working rows
  const std::size_t d = flip ? m.rows() : m.cols();  // working cols

  // Column-major working copy: column j at a[j*n .. (j+1)*n).
  std::vector<double> a(n * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < n; ++i)
      a[j * n + i] = flip ? m(j, i) : m(i, j);

  // Right-rotation accumulator, column-major d x d, starts as identity.
  std::vector<double> v(d * d, 0.0);
  for (std::size_t j = 0; j < d; ++j) v[j * d + j] = 1.0;

  std::vector<double> colsq(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    const double* col = &a[j * n];
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += col[i] * col[i];
    colsq[j] = acc;
  }

  const double tol = 16.0 * std::numeric_limits<double>::epsilon() *
                     std::sqrt(static_cast<double>(n));
  bool converged = (d <= 1);
  int sweeps = 0;
  while (!converged && sweeps < max_sweeps) {
    ++sweeps;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        double* ap = &a[p * n];
        double* aq = &a[q * n];
        double gamma = 0.0;
        for (std::size_t i = 0; i < n; ++i) gamma += ap[i] * aq[i];
        const double alpha = colsq[p];
        const double beta = colsq[q];
        const double scale = std::sqrt(alpha * beta);
        if (gamma == 0.0 || scale == 0.0 || std::abs(gamma) <= tol * scale)
          continue;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const double x = ap[i], y = aq[i];
          ap[i] = c * x - s * y;
          aq[i] = s * x + c * y;
        }
        double* vp = &v[p * d];
        double* vq = &v[q * d];
        for (std::size_t i = 0; i < d; ++i) {
          const double x = vp[i], y = vq[i];
          vp[i] = c * x - s * y;
          vq[i] = s * x + c * y;
        }
        const double cross = 2.0 * c * s * gamma;
        colsq[p] = c * c * alpha - cross + s * s * beta;
        colsq[q] = s * s * alpha + cross + c * c * beta;
        rotated = true;
      }
    }
    if (!rotated) converged = true;
  }
  if (!converged) {
    throw NumericError(
        "truncated_svd: Jacobi rotations did not converge after " +
        std::to_string(sweeps) + " sweeps");
  }

  // Exact singular values from the worked columns, sorted descending.
  std::vector<double> sigma(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    const double* col = &a[j * n];
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += col[i] * col[i];
    sigma[j] = std::sqrt(acc);
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return sigma[x] > sigma[y];
  });

  const double sigma_max = sigma[order[0]];
  const double zero_tol = sigma_max * static_cast<double>(std::max(n, d)) *
                          std::numeric_limits<double>::epsilon();

  // Left factor of the working matrix: normalized columns, with a
  // deterministic orthonormal completion wherever sigma vanishes.
  std::vector<Vector> left_cols;
  left_cols.reserve(k);
  std::size_t candidate = 0;
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t j = order[r];
    Vector col(n, 0.0);
    if (sigma[j] > zero_tol) {
      for (std::size_t i = 0; i < n; ++i) col[i] = a[j * n + i] / sigma[j];
    } else {
      for (;; ++candidate) {
        if (candidate >= n)
          throw NumericError("truncated_svd: failed to complete a "
                             "rank-deficient left factor");
        Vector w(n, 0.0);
        w[candidate] = 1.0;
        for (const Vector& u : left_cols) {
          const double proj = dot(u, w);
          for (std::size_t i = 0; i < n; ++i) w[i] -= proj * u[i];
        }
        const double wn = norm(w);
        if (wn > 0.5) {
          for (std::size_t i = 0; i < n; ++i) col[i] = w[i] / wn;
          ++candidate;
          break;
        }
      }
    }
    left_cols.push_back(std::move(col));
  }

  SvdResult out;
  out.s.resize(k);
  for (std::size_t r = 0; r < k; ++r) out.s[r] = sigma[order[r]];

  // Working matrix W = L * diag(s) * R^T with R = accumulated rotations.
  // For the original m: no flip -> u = L, vt = R^T; flip -> u = R, vt = L^T.
  if (!flip) {
    out.u = Matrix(n, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t i = 0; i < n; ++i) out.u(i, r) = left_cols[r][i];
    out.vt = Matrix(k, d);
    for (std::size_t r = 0; r < k; ++r) {
      const double* vcol = &v[order[r] * d];
      for (std::size_t j = 0; j < d; ++j) out.vt(r, j) = vcol[j];
    }
  } else {
    out.u = Matrix(d, k);
    for (std::size_t r = 0; r < k; ++r) {
      const double* vcol = &v[order[r] * d];
      for (std::size_t i = 0; i < d; ++i) out.u(i, r) = vcol[i];
    }
    out.vt = Matrix(k, n);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t j = 0; j < n; ++j) out.vt(r, j) = left_cols[r][j];
  }
  return out;
}

}  // namespace compsem
