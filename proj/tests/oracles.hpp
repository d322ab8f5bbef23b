#pragma once

// Reference implementations used only by tests. Each one takes a different
// route than the library code it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "compsem/linalg.hpp"

namespace oracles {

// Rank-k singular triplets obtained through an eigendecomposition of the
// Gram matrix M^T M (two-sided cyclic Jacobi on the symmetric Gram matrix),
// left vectors recovered as M v / sigma.
struct SvdRef {
  std::vector<double> s;
  compsem::Matrix u;
  compsem::Matrix vt;
};

inline SvdRef svd_via_gram(const compsem::Matrix& m, std::size_t k) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<double>> g(cols, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      double acc = 0.0;
      for (std::size_t r = 0; r < rows; ++r) acc += m(r, i) * m(r, j);
      g[i][j] = acc;
    }
  std::vector<std::vector<double>> v(cols, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1.0;

  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < cols; ++p)
      for (std::size_t q = p + 1; q < cols; ++q) off += std::abs(g[p][q]);
    if (off < 1e-14) break;
    for (std::size_t p = 0; p < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        if (std::abs(g[p][q]) < 1e-300) continue;
        const double tau = (g[q][q] - g[p][p]) / (2.0 * g[p][q]);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < cols; ++i) {
          const double gip = g[i][p], giq = g[i][q];
          g[i][p] = c * gip - s * giq;
          g[i][q] = s * gip + c * giq;
        }
        for (std::size_t i = 0; i < cols; ++i) {
          const double gpi = g[p][i], gqi = g[q][i];
          g[p][i] = c * gpi - s * gqi;
          g[q][i] = s * gpi + c * gqi;
        }
        for (std::size_t i = 0; i < cols; ++i) {
          const double vip = v[i][p], viq = v[i][q];
          v[i][p] = c * vip - s * viq;
          v[i][q] = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<double> eig(cols);
  for (std::size_t i = 0; i < cols; ++i) eig[i] = std::max(0.0, g[i][i]);
  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return eig[x] > eig[y];
  });

  SvdRef out;
  out.s.resize(k);
  out.u = compsem::Matrix(rows, k);
  out.vt = compsem::Matrix(k, cols);
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t j = order[r];
    const double sigma = std::sqrt(eig[j]);
    out.s[r] = sigma;
    for (std::size_t i = 0; i < cols; ++i) out.vt(r, i) = v[i][j];
    if (sigma > 0.0) {
      for (std::size_t i = 0; i < rows; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < cols; ++c) acc += m(i, c) * v[c][j];
        out.u(i, r) = acc / sigma;
      }
    }
  }
  return out;
}

inline compsem::Matrix rank_k_reconstruction(const compsem::Matrix& u,
                                             const std::vector<double>& s,
                                             const compsem::Matrix& vt) {
  compsem::Matrix out(u.rows(), vt.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < vt.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t r = 0; r < s.size(); ++r)
        acc += u(i, r) * s[r] * vt(r, j);
      out(i, j) = acc;
    }
  return out;
}

inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol;
}

// Fractional rank by direct counting: 1 + #smaller + (#equal - 1)/2.
inline std::vector<double> ranks_by_counting(const std::vector<double>& xs) {
  std::vector<double> out(xs.size(), 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::size_t smaller = 0, equal = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (xs[j] < xs[i]) ++smaller;
      if (xs[j] == xs[i]) ++equal;
    }
    out[i] = 1.0 + static_cast<double>(smaller) +
             (static_cast<double>(equal) - 1.0) / 2.0;
  }
  return out;
}

// Chi-squared over a 2x2 table summed as (observed - expected)^2 / expected.
inline double chi_square_by_expected(std::uint64_t sa, std::uint64_t na,
                                     std::uint64_t sb, std::uint64_t nb) {
  const double obs[2][2] = {
      {static_cast<double>(sa), static_cast<double>(na - sa)},
      {static_cast<double>(sb), static_cast<double>(nb - sb)}};
  const double row[2] = {obs[0][0] + obs[0][1], obs[1][0] + obs[1][1]};
  const double col[2] = {obs[0][0] + obs[1][0], obs[0][1] + obs[1][1]};
  const double total = row[0] + row[1];
  double stat = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double expected = row[i] * col[j] / total;
      if (expected > 0.0) {
        const double diff = obs[i][j] - expected;
        stat += diff * diff / expected;
      }
    }
  return stat;
}

// Dense PPMI/LMI computed directly from the probability definitions over an
// explicit count grid.
struct DenseWeights {
  std::vector<std::vector<double>> ppmi;
  std::vector<std::vector<double>> lmi;
};

inline DenseWeights weight_by_definition(
    const std::vector<std::vector<std::uint64_t>>& counts) {
  const std::size_t rows = counts.size();
  const std::size_t cols = rows == 0 ? 0 : counts[0].size();
  std::vector<double> row_tot(rows, 0.0), col_tot(cols, 0.0);
  double grand = 0.0;
  for (std::size_t t = 0; t < rows; ++t)
    for (std::size_t c = 0; c < cols; ++c) {
      const double n = static_cast<double>(counts[t][c]);
      row_tot[t] += n;
      col_tot[c] += n;
      grand += n;
    }
  DenseWeights out;
  out.ppmi.assign(rows, std::vector<double>(cols, 0.0));
  out.lmi.assign(rows, std::vector<double>(cols, 0.0));
  for (std::size_t t = 0; t < rows; ++t)
    for (std::size_t c = 0; c < cols; ++c) {
      const double n = static_cast<double>(counts[t][c]);
      if (n == 0.0) continue;
      const double pmi =
          std::log((n / row_tot[t]) / (col_tot[c] / grand));
      out.ppmi[t][c] = std::max(0.0, pmi);
      out.lmi[t][c] = n * pmi;
    }
  return out;
}

// Small deterministic generator for test data (xorshift64*).
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed ? seed : 1) {}
  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }
  double uniform() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double symmetric() { return 2.0 * uniform() - 1.0; }  // [-1, 1)

 private:
  std::uint64_t state_;
};

}  // namespace oracles
