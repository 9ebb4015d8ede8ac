#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fragtree/random.hpp"

namespace fragtree {

enum class LawKind { kGeometricHalf, kPoissonOne, kStableTail, kFiniteTable };

/// Raised when rejection sampling cannot hit a conditioning event within the
/// configured number of attempts.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, std::int64_t attempts)
      : std::runtime_error(what), attempts_(attempts) {}
  std::int64_t attempts() const noexcept { return attempts_; }

 private:
  std::int64_t attempts_;
};

/// A critical offspring distribution in the domain of attraction of an
/// alpha-stable law, alpha in (1, 2].
///
/// Four families are supported:
///   - geometric-half: mu(k) = 2^{-(k+1)}, variance 2.
///   - poisson-one:    mu(k) = e^{-1} / k!, variance 1.
///   - stable-tail:    mu(k) = k^{-1-alpha} / zeta(alpha) for k >= 1 and
///                     mu(0) = 1 - zeta(1+alpha) / zeta(alpha); mean exactly 1,
///                     infinite variance.
///   - finite-table:   user supplied probabilities, checked for normalization
///                     and criticality.
///
/// Instances are immutable and cheap to copy (tables are shared).
class OffspringLaw {
 public:
  static OffspringLaw geometric_half();
  static OffspringLaw poisson_one();
  static OffspringLaw stable_tail(double alpha);
  static OffspringLaw finite_table(std::vector<double> probabilities);

  /// "geometric-half", "poisson-one", "stable-tail:<alpha>" or
  /// "table:<p0>,<p1>,...".
  static OffspringLaw from_tag(std::string_view tag);

  LawKind kind() const noexcept { return kind_; }
  const std::string& tag() const noexcept { return tag_; }

  double pmf(std::int64_t k) const;
  /// P(Y >= k).
  double tail(std::int64_t k) const;
  double mean() const noexcept { return 1.0; }
  /// nullopt when the variance is infinite.
  std::optional<double> variance() const noexcept { return variance_; }
  /// Stable index; 2 for every finite-variance law.
  double alpha() const noexcept { return alpha_; }
  /// c in mu(k) = c k^{-1-alpha}; zero for finite-variance laws.
  double tail_constant() const noexcept { return tail_constant_; }
  /// gcd of the support. Conditioned trees of size n exist only when
  /// (n - 1) is a multiple of it.
  std::int64_t lattice_span() const noexcept { return span_; }
  /// Largest k with mu(k) > 0, or nullopt for unbounded support.
  std::optional<std::int64_t> support_max() const noexcept { return support_max_; }

  /// Generalized inverse CDF: the smallest k with F(k) >= u, u in [0, 1].
  std::int64_t quantile(double u) const;
  /// The smallest k with P(Y >= k + 1) <= v, v in (0, 1]. Equivalent to
  /// quantile(1 - v) without the cancellation in 1 - v.
  std::int64_t tail_quantile(double v) const;

  /// Number of tabulated probabilities; beyond this index stable-tail laws
  /// switch to the analytic tail.
  std::int64_t table_size() const noexcept;

 private:
  struct Tables;
  OffspringLaw() = default;

  LawKind kind_{LawKind::kGeometricHalf};
  std::string tag_;
  double alpha_{2.0};
  double tail_constant_{0.0};
  std::optional<double> variance_;
  std::int64_t span_{1};
  std::optional<std::int64_t> support_max_;
  std::shared_ptr<const Tables> tables_;
};

/// Hurwitz zeta function sum_{k>=0} (a + k)^{-s} for s > 1, a > 0.
double hurwitz_zeta(double s, double a);

/// One draw from the law by tail inversion of a single uniform.
std::int64_t sample_offspring(const OffspringLaw& law, Rng& rng);

/// Y_1 + ... + Y_n for i.i.d. Y_i. Sampled through the multinomial count
/// profile, so the cost grows with the support actually hit rather than n.
std::int64_t sample_offspring_sum(const OffspringLaw& law, std::int64_t n,
                                  Rng& rng);

/// The normalizing sequence B_n: sigma * sqrt(n) for finite variance, and
/// (n c Gamma(2 - alpha) / (alpha (alpha - 1)))^{1/alpha} for stable-tail
/// laws, so that (S_n - n) / B_n has Laplace transform exp(lambda^alpha).
double bn(const OffspringLaw& law, std::int64_t n);

enum class ConditionedSampling {
  /// Count profile is drawn as a multinomial through sequential binomials,
  /// then shuffled. Same law as kSequential, far fewer random draws.
  kMultinomial,
  /// n sequential inverse-CDF draws per attempt.
  kSequential,
};

struct ConditionedCounts {
  std::vector<std::int32_t> counts;
  std::int64_t attempts{0};
};

/// n i.i.d. offspring counts conditioned on summing to `target`, in
/// exchangeable order. Throws ConditioningError after `max_attempts`
/// rejected attempts.
ConditionedCounts sample_conditioned_counts(
    const OffspringLaw& law, std::int64_t n, std::int64_t target, Rng& rng,
    std::int64_t max_attempts = 1'000'000,
    ConditionedSampling method = ConditionedSampling::kMultinomial);

}  // namespace fragtree
