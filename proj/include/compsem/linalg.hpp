#pragma once

#include <cstddef>
#include <vector>

namespace compsem {

using Vector = std::vector<double>;

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static Matrix identity(std::size_t n);

  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// Top-k singular triplets of a matrix: m ≈ u * diag(s) * vt,
// u has orthonormal columns, vt orthonormal rows, s non-increasing.
struct SvdResult {
  Matrix u;   // rows(m) x k
  Vector s;   // k
  Matrix vt;  // k x cols(m)
};

Vector add(const Vector& a, const Vector& b);
Vector pointwise_mult(const Vector& a, const Vector& b);
Matrix outer(const Vector& a, const Vector& b);
Matrix hadamard(const Matrix& a, const Matrix& b);

// Standard matrix-vector product; `transposed` applies m^T instead.
Vector matvec(const Matrix& m, const Vector& v, bool transposed = false);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& v);

// Cosine similarity in [-1, 1]; either operand having zero norm yields 0.
// Matrices are compared through their flattenings (Frobenius inner product).
double cosine(const Vector& a, const Vector& b);
double cosine(const Matrix& a, const Matrix& b);

// Unit-norm copy of v; the zero vector maps to itself.
Vector l2_normalize(const Vector& v);

// One-sided Jacobi SVD truncated to the top k triplets. Throws
// std::invalid_argument when k is out of range and NumericError when the
// sweep limit is reached without convergence.
SvdResult truncated_svd(const Matrix& m, std::size_t k, int max_sweeps = 60);

}  // namespace compsem
