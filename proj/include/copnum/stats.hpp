#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace copnum {

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

// Pearson goodness-of-fit of `counts` against the uniform distribution over
// its cells.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts);

double median(std::vector<double> values);

// Least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace copnum
