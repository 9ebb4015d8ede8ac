#include "fragtree/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fragtree {
namespace {

std::vector<double> sorted_copy(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Walks both sorted samples in step, calling visit(x_prev, x_next, Fa, Fb)
// on every interval between consecutive distinct values.
template <typename Visit>
void merge_cdfs(const std::vector<double>& a, const std::vector<double>& b, Visit visit) {
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    double x;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      x = a[i];
    } else {
      x = b[j];
    }
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    double next = x;
    if (i < a.size() && j < b.size()) {
      next = std::min(a[i], b[j]);
    } else if (i < a.size()) {
      next = a[i];
    } else if (j < b.size()) {
      next = b[j];
    }
    visit(x, next, static_cast<double>(i) / na, static_cast<double>(j) / nb);
  }
}

}  // namespace

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs two nonempty samples");
  double d = 0.0;
  merge_cdfs(sorted_copy(a), sorted_copy(b),
             [&](double, double, double fa, double fb) { d = std::max(d, std::abs(fa - fb)); });
  return d;
}

double wasserstein1(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("W1 needs two nonempty samples");
  double total = 0.0;
  merge_cdfs(sorted_copy(a), sorted_copy(b), [&](double x, double next, double fa, double fb) {
    total += std::abs(fa - fb) * (next - x);
  });
  return total;
}

ChiSquareResult chi_square_uniform(std::span<const std::int64_t> counts) {
  if (counts.size() < 2) throw std::invalid_argument("chi-square needs at least two cells");
  double n = 0.0;
  for (const auto c : counts) n += static_cast<double>(c);
  if (n <= 0.0) throw std::invalid_argument("chi-square needs observations");
  const double expected = n / static_cast<double>(counts.size());
  ChiSquareResult result;
  for (const auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    result.statistic += diff * diff / expected;
  }
  result.degrees_of_freedom = static_cast<double>(counts.size() - 1);
  result.p_value = boost::math::gamma_q(0.5 * result.degrees_of_freedom, 0.5 * result.statistic);
  return result;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("correlation needs two equally long samples");
  }
  const auto mx = mean_estimate(x).mean;
  const auto my = mean_estimate(y).mean;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

MeanEstimate mean_estimate(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean of an empty sample");
  double sum = 0.0;
  for (const double v : x) sum += v;
  const double n = static_cast<double>(x.size());
  MeanEstimate est;
  est.mean = sum / n;
  if (x.size() > 1) {
    double ss = 0.0;
    for (const double v : x) ss += (v - est.mean) * (v - est.mean);
    est.standard_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return est;
}

}  // namespace fragtree
