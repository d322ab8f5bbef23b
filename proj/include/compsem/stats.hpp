#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace compsem {

// Fractional ranks (1-based); tied values share the average of the ranks
// they span.
std::vector<double> average_ranks(const std::vector<double>& values);

// Spearman rank correlation. Throws std::invalid_argument on length
// mismatch or fewer than two observations, NumericError when either side
// has zero rank variance.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

// Pearson chi-squared test on a 2x2 outcome table (one degree of freedom).
struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// successes_a out of trials_a vs successes_b out of trials_b. Degenerate
// margins (an all-zero row or column) give statistic 0, p 1.
ChiSquareResult chi_square_2x2(std::uint64_t successes_a,
                               std::uint64_t trials_a,
                               std::uint64_t successes_b,
                               std::uint64_t trials_b);

}  // namespace compsem
