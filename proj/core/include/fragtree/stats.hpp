#pragma once

#include <cstdint>
#include <span>

namespace fragtree {

/// Kolmogorov-Smirnov statistic sup |F_a - F_b| between two empirical CDFs.
/// Throws std::invalid_argument on empty input.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Wasserstein-1 distance between two empirical distributions.
double wasserstein1(std::span<const double> a, std::span<const double> b);

struct ChiSquareResult {
  double statistic{0.0};
  double degrees_of_freedom{0.0};
  double p_value{1.0};
};

/// Pearson chi-square test of equal cell probabilities.
ChiSquareResult chi_square_uniform(std::span<const std::int64_t> counts);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

struct MeanEstimate {
  double mean{0.0};
  double standard_error{0.0};
};

MeanEstimate mean_estimate(std::span<const double> x);

}  // namespace fragtree
