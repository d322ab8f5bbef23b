#include "compsem/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "compsem/errors.hpp"

namespace compsem {

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return values[x] < values[y];
                   });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("spearman: length mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  if (a.size() < 2) {
    throw std::invalid_argument("spearman: need at least two observations");
  }
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  const std::size_t n = ra.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = ra[i] - ma;
    const double dy = rb[i] - mb;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw NumericError("spearman: zero rank variance (all values tied)");
  }
  return sxy / std::sqrt(sxx * syy);
}

ChiSquareResult chi_square_2x2(std::uint64_t successes_a,
                               std::uint64_t trials_a,
                               std::uint64_t successes_b,
                               std::uint64_t trials_b) {
  if (successes_a > trials_a || successes_b > trials_b) {
    throw std::invalid_argument("chi_square_2x2: successes exceed trials");
  }
  const double a = static_cast<double>(successes_a);
  const double b = static_cast<double>(trials_a - successes_a);
  const double c = static_cast<double>(successes_b);
  const double d = static_cast<double>(trials_b - successes_b);
  const double row1 = a + b;
  const double row2 = c + d;
  const double col1 = a + c;
  const double col2 = b + d;
  ChiSquareResult out;
  if (row1 == 0.0 || row2 == 0.0 || col1 == 0.0 || col2 == 0.0) {
    return out;  // degenerate table: no evidence of difference
  }
  const double total = row1 + row2;
  const double det = a * d - b * c;
  out.statistic = total * det * det / (row1 * row2 * col1 * col2);
  // One degree of freedom: p = erfc(sqrt(x/2)).
  out.p_value = std::erfc(std::sqrt(out.statistic / 2.0));
  return out;
}

}  // namespace compsem
