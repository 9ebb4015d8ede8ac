#include "fragtree/offspring.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

namespace fragtree {

struct OffspringLaw::Tables {
  // pmf[k] for k < size; tail[k] = P(Y >= k) for k <= size.
  std::vector<double> pmf;
  std::vector<double> tail;
};

namespace {

constexpr std::int64_t kStableTableSize = std::int64_t{1} << 16;
constexpr std::int64_t kGeometricTableSize = 1000;
constexpr std::int64_t kPoissonTableSize = 180;

// Even Bernoulli numbers B_2 .. B_12.
constexpr std::array<double, 6> kBernoulli = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0};

std::string format_alpha(double alpha) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), alpha);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  while (first != last && *first == ' ') ++first;
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

void fill_tail_backward(std::vector<double>& tail, const std::vector<double>& pmf,
                        double tail_beyond) {
  const auto size = pmf.size();
  tail.assign(size + 1, 0.0);
  tail[size] = tail_beyond;
  for (std::size_t k = size; k-- > 0;) tail[k] = tail[k + 1] + pmf[k];
  tail[0] = 1.0;
}

}  // namespace

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0) || !(a > 0.0)) {
    throw std::invalid_argument("hurwitz_zeta requires s > 1 and a > 0");
  }
  // Direct summation until a + N >= 10, then Euler-Maclaurin.
  double sum = 0.0;
  double x = a;
  while (x < 10.0) {
    sum += std::pow(x, -s);
    x += 1.0;
  }
  double result = sum + std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  // Term j: B_{2j} / (2j)! * s (s+1) ... (s+2j-2) * x^{-s-2j+1}.
  double rising = s;              // s (s+1) ... (s+2j-2)
  double factorial = 2.0;         // (2j)!
  double power = std::pow(x, -s - 1.0);
  for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
    result += kBernoulli[j] / factorial * rising * power;
    const double m = 2.0 * static_cast<double>(j + 1);
    rising *= (s + m - 1.0) * (s + m);
    factorial *= (m + 1.0) * (m + 2.0);
    power /= x * x;
  }
  return result;
}

OffspringLaw OffspringLaw::geometric_half() {
  OffspringLaw law;
  law.kind_ = LawKind::kGeometricHalf;
  law.tag_ = "geometric-half";
  law.variance_ = 2.0;
  auto tables = std::make_shared<Tables>();
  tables->pmf.resize(kGeometricTableSize);
  tables->tail.resize(kGeometricTableSize + 1);
  for (std::int64_t k = 0; k < kGeometricTableSize; ++k) {
    tables->pmf[k] = std::ldexp(1.0, static_cast<int>(-(k + 1)));
  }
  for (std::int64_t k = 0; k <= kGeometricTableSize; ++k) {
    tables->tail[k] = std::ldexp(1.0, static_cast<int>(-k));
  }
  law.tables_ = std::move(tables);
  return law;
}

OffspringLaw OffspringLaw::poisson_one() {
  OffspringLaw law;
  law.kind_ = LawKind::kPoissonOne;
  law.tag_ = "poisson-one";
  law.variance_ = 1.0;
  auto tables = std::make_shared<Tables>();
  tables->pmf.resize(kPoissonTableSize);
  for (std::int64_t k = 0; k < kPoissonTableSize; ++k) {
    tables->pmf[k] = std::exp(-1.0 - std::lgamma(static_cast<double>(k) + 1.0));
  }
  fill_tail_backward(tables->tail, tables->pmf, 0.0);
  law.tables_ = std::move(tables);
  return law;
}

OffspringLaw OffspringLaw::stable_tail(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw std::invalid_argument("stable-tail index must lie in (1, 2), got " +
                                format_alpha(alpha));
  }
  OffspringLaw law;
  law.kind_ = LawKind::kStableTail;
  law.tag_ = "stable-tail:" + format_alpha(alpha);
  law.alpha_ = alpha;
  const double zeta_alpha = hurwitz_zeta(alpha, 1.0);
  law.tail_constant_ = 1.0 / zeta_alpha;
  const double mu0 = 1.0 - hurwitz_zeta(1.0 + alpha, 1.0) / zeta_alpha;
  if (!(mu0 > 0.0)) {
    throw std::logic_error("stable-tail law has non-positive mu(0)");
  }

  auto tables = std::make_shared<Tables>();
  tables->pmf.resize(kStableTableSize);
  tables->pmf[0] = mu0;
  for (std::int64_t k = 1; k < kStableTableSize; ++k) {
    tables->pmf[k] = law.tail_constant_ *
                     std::pow(static_cast<double>(k), -1.0 - alpha);
  }
  const double beyond =
      law.tail_constant_ *
      hurwitz_zeta(1.0 + alpha, static_cast<double>(kStableTableSize));
  fill_tail_backward(tables->tail, tables->pmf, beyond);
  law.tables_ = std::move(tables);
  return law;
}

OffspringLaw OffspringLaw::finite_table(std::vector<double> probabilities) {
  if (probabilities.empty()) {
    throw std::invalid_argument("offspring table is empty");
  }
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("offspring table has a negative or non-finite entry");
    }
  }
  while (probabilities.size() > 1 && probabilities.back() == 0.0) {
    probabilities.pop_back();
  }
  double total = 0.0;
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    const double kk = static_cast<double>(k);
    total += probabilities[k];
    mean += kk * probabilities[k];
    second += kk * kk * probabilities[k];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("offspring table does not sum to 1");
  }
  if (std::abs(mean - 1.0) > 1e-10) {
    throw std::invalid_argument("offspring table is not critical (mean != 1)");
  }
  if (!(probabilities[0] > 0.0)) {
    throw std::invalid_argument("offspring table needs mu(0) > 0");
  }
  const double mu1 = probabilities.size() > 1 ? probabilities[1] : 0.0;
  if (!(probabilities[0] + mu1 < 1.0)) {
    throw std::invalid_argument("offspring table needs mu(0) + mu(1) < 1");
  }

  OffspringLaw law;
  law.kind_ = LawKind::kFiniteTable;
  std::ostringstream tag;
  tag << "table:";
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (k > 0) tag << ',';
    tag << format_alpha(probabilities[k]);
  }
  law.tag_ = tag.str();
  law.variance_ = second - mean * mean;
  std::int64_t span = 0;
  for (std::size_t k = 1; k < probabilities.size(); ++k) {
    if (probabilities[k] > 0.0) span = std::gcd(span, static_cast<std::int64_t>(k));
  }
  law.span_ = span;
  law.support_max_ = static_cast<std::int64_t>(probabilities.size()) - 1;

  auto tables = std::make_shared<Tables>();
  tables->pmf = std::move(probabilities);
  fill_tail_backward(tables->tail, tables->pmf, 0.0);
  law.tables_ = std::move(tables);
  return law;
}

OffspringLaw OffspringLaw::from_tag(std::string_view tag) {
  if (tag == "geometric-half") return geometric_half();
  if (tag == "poisson-one") return poisson_one();
  constexpr std::string_view kStable = "stable-tail:";
  constexpr std::string_view kTable = "table:";
  if (tag.starts_with(kStable)) {
    return stable_tail(parse_double(tag.substr(kStable.size())));
  }
  if (tag.starts_with(kTable)) {
    std::vector<double> probabilities;
    auto rest = tag.substr(kTable.size());
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      probabilities.push_back(parse_double(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return finite_table(std::move(probabilities));
  }
  throw std::invalid_argument("unknown offspring law tag '" + std::string(tag) + "'");
}

std::int64_t OffspringLaw::table_size() const noexcept {
  return static_cast<std::int64_t>(tables_->pmf.size());
}

double OffspringLaw::pmf(std::int64_t k) const {
  if (k < 0) return 0.0;
  if (k < table_size()) return tables_->pmf[static_cast<std::size_t>(k)];
  if (kind_ == LawKind::kStableTail) {
    return tail_constant_ * std::pow(static_cast<double>(k), -1.0 - alpha_);
  }
  return 0.0;
}

double OffspringLaw::tail(std::int64_t k) const {
  if (k <= 0) return 1.0;
  if (k <= table_size()) return tables_->tail[static_cast<std::size_t>(k)];
  if (kind_ == LawKind::kStableTail) {
    return tail_constant_ * hurwitz_zeta(1.0 + alpha_, static_cast<double>(k));
  }
  return 0.0;
}

std::int64_t OffspringLaw::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("quantile level must lie in [0, 1]");
  }
  if (u == 1.0) {
    if (support_max_) return *support_max_;
    throw std::invalid_argument("quantile(1) is infinite for unbounded support");
  }
  return tail_quantile(1.0 - u);
}

std::int64_t OffspringLaw::tail_quantile(double v) const {
  const auto& tail_table = tables_->tail;
  const auto size = table_size();
  if (v >= 1.0) return 0;
  if (v >= tail_table[static_cast<std::size_t>(size)]) {
    // First j >= 1 with tail[j] <= v; the answer is j - 1.
    const auto it = std::partition_point(tail_table.begin() + 1, tail_table.end(),
                                         [v](double q) { return q > v; });
    return static_cast<std::int64_t>(it - tail_table.begin()) - 1;
  }
  // Only stable-tail laws reach here. tail(k) ~ (c / alpha) (k - 1/2)^{-alpha}.
  const double guess =
      std::pow(tail_constant_ / (alpha_ * v), 1.0 / alpha_) - 0.5;
  auto k = std::max<std::int64_t>(size, static_cast<std::int64_t>(guess));
  while (tail(k + 1) > v) ++k;
  while (k > size && tail(k) <= v) --k;
  return k;
}

std::int64_t sample_offspring(const OffspringLaw& law, Rng& rng) {
  // 1 - U is exact for U on the 2^-53 grid.
  return law.tail_quantile(1.0 - uniform01(rng));
}

namespace {

// Binomial splitting stops at this index; the remaining vertices are drawn
// one at a time from the conditional tail.
std::int64_t split_index(const OffspringLaw& law, std::int64_t n) {
  if (const auto max = law.support_max()) return *max;
  if (law.kind() != LawKind::kStableTail) return law.table_size() - 1;
  std::int64_t k = 16;
  const auto cap = law.table_size() - 1;
  while (k < cap && static_cast<double>(n) * law.tail(k + 1) > 16.0) ++k;
  return k;
}

// Appends (value, count) runs of a multinomial count profile and returns the
// sum; returns nullopt as soon as the sum is certain to exceed `limit`.
struct ProfileRun {
  std::int64_t value;
  std::int64_t count;
};

std::optional<std::int64_t> draw_profile(const OffspringLaw& law, std::int64_t n,
                                         std::int64_t limit, std::int64_t split,
                                         Rng& rng, std::vector<ProfileRun>& runs) {
  runs.clear();
  std::int64_t remaining = n;
  std::int64_t sum = 0;
  const bool bounded = law.support_max().has_value();
  for (std::int64_t k = 0; k <= split && remaining > 0; ++k) {
    std::int64_t count = 0;
    if (bounded && k == split) {
      count = remaining;
    } else {
      const double q = law.tail(k);
      const double p = q > 0.0 ? std::min(1.0, law.pmf(k) / q) : 1.0;
      count = binomial(rng, remaining, p);
    }
    if (count > 0) {
      runs.push_back({k, count});
      remaining -= count;
      sum += k * count;
    }
    if (sum + remaining * (k + 1) > limit) return std::nullopt;
  }
  if (remaining > 0) {
    const double beyond = law.tail(split + 1);
    for (std::int64_t i = 0; i < remaining; ++i) {
      const auto k = std::max(split + 1, law.tail_quantile(beyond * uniform_open01(rng)));
      runs.push_back({k, 1});
      sum += k;
      if (sum > limit) return std::nullopt;
    }
  }
  return sum;
}

}  // namespace

std::int64_t sample_offspring_sum(const OffspringLaw& law, std::int64_t n,
                                  Rng& rng) {
  if (n < 0) throw std::invalid_argument("sample_offspring_sum needs n >= 0");
  std::vector<ProfileRun> runs;
  const auto sum = draw_profile(law, n, std::numeric_limits<std::int64_t>::max() / 4,
                                split_index(law, n), rng, runs);
  return sum.value_or(std::numeric_limits<std::int64_t>::max());
}

double bn(const OffspringLaw& law, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("bn needs n >= 1");
  const auto nn = static_cast<double>(n);
  if (const auto var = law.variance()) {
    return std::sqrt(*var * nn);
  }
  if (law.kind() == LawKind::kStableTail) {
    const double a = law.alpha();
    const double scale =
        nn * law.tail_constant() * boost::math::tgamma(2.0 - a) / (a * (a - 1.0));
    return std::pow(scale, 1.0 / a);
  }
  throw std::invalid_argument("law has neither finite variance nor a stable tail");
}

ConditionedCounts sample_conditioned_counts(const OffspringLaw& law, std::int64_t n,
                                            std::int64_t target, Rng& rng,
                                            std::int64_t max_attempts,
                                            ConditionedSampling method) {
  if (n < 1) throw std::invalid_argument("conditioned sampling needs n >= 1");
  if (target < 0) throw std::invalid_argument("conditioned sampling needs target >= 0");
  if (target % law.lattice_span() != 0) {
    throw ConditioningError("conditioning impossible: target " + std::to_string(target) +
                                " is not a multiple of the support span " +
                                std::to_string(law.lattice_span()) + " of " + law.tag(),
                            0);
  }
  if (const auto max = law.support_max(); max && *max * n < target) {
    throw ConditioningError("conditioning impossible: support too small", 0);
  }

  ConditionedCounts out;
  out.counts.resize(static_cast<std::size_t>(n));
  if (method == ConditionedSampling::kSequential) {
    for (std::int64_t attempt = 1; attempt <= max_attempts; ++attempt) {
      std::int64_t sum = 0;
      std::int64_t i = 0;
      for (; i < n; ++i) {
        const auto k = sample_offspring(law, rng);
        sum += k;
        if (sum > target) break;
        out.counts[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(k);
      }
      if (i == n && sum == target) {
        out.attempts = attempt;
        return out;
      }
    }
  } else {
    const auto split = split_index(law, n);
    std::vector<ProfileRun> runs;
    for (std::int64_t attempt = 1; attempt <= max_attempts; ++attempt) {
      const auto sum = draw_profile(law, n, target, split, rng, runs);
      if (!sum || *sum != target) continue;
      auto it = out.counts.begin();
      for (const auto& run : runs) {
        it = std::fill_n(it, run.count, static_cast<std::int32_t>(run.value));
      }
      shuffle(rng, std::span<std::int32_t>(out.counts));
      out.attempts = attempt;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "conditioning too rare: no sample of " << n << " offspring counts from "
      << law.tag() << " summed to " << target << " in " << max_attempts
      << " attempts (expected acceptance ~ 1/B_n = " << 1.0 / bn(law, n) << ")";
  throw ConditioningError(msg.str(), max_attempts);
}

}  // namespace fragtree
