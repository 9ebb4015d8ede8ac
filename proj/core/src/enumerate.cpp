#include "fragtree/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fragtree/prim.hpp"

namespace fragtree {
namespace {

void extend(std::vector<std::int32_t>& counts, std::int32_t height, std::int32_t n,
            std::vector<std::vector<std::int32_t>>& out) {
  const auto k = static_cast<std::int32_t>(counts.size());
  if (k == n) {
    if (height == -1) out.push_back(counts);
    return;
  }
  if (height < 0) return;
  const std::int32_t remaining = n - k;
  for (std::int32_t c = 0; height + c - 1 <= remaining - 2; ++c) {
    counts.push_back(c);
    extend(counts, height + c - 1, n, out);
    counts.pop_back();
  }
}

std::vector<std::vector<std::int32_t>> all_count_sequences(std::int32_t n) {
  std::vector<std::vector<std::int32_t>> out;
  std::vector<std::int32_t> counts;
  counts.reserve(static_cast<std::size_t>(n));
  extend(counts, 0, n, out);
  return out;
}

double binomial_pmf(std::int32_t trials, std::int32_t k, double p) {
  if (k < 0 || k > trials) return 0.0;
  const double log_choose = std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(trials - k + 1.0);
  double value = std::exp(log_choose);
  for (std::int32_t i = 0; i < k; ++i) value *= p;
  for (std::int32_t i = 0; i < trials - k; ++i) value *= 1.0 - p;
  return value;
}

// Calls visit(weights, ordering_probability) for each of the (n-1)! rank
// orderings, with the edge above vertex v getting weight rank / n.
template <typename Visit>
void for_each_rank_ordering(std::int32_t n, Visit visit) {
  std::vector<std::int32_t> ranks(static_cast<std::size_t>(n - 1));
  std::iota(ranks.begin(), ranks.end(), 1);
  double orderings = 1.0;
  for (std::int32_t i = 2; i < n; ++i) orderings *= i;
  do {
    std::vector<double> values(static_cast<std::size_t>(n), 0.0);
    for (std::size_t v = 1; v < values.size(); ++v) {
      values[v] = static_cast<double>(ranks[v - 1]) / static_cast<double>(n);
    }
    visit(EdgeWeights::from_values(std::move(values)), 1.0 / orderings);
  } while (std::next_permutation(ranks.begin(), ranks.end()));
}

}  // namespace

std::vector<WeightedTree> enumerate_conditioned_trees(const OffspringLaw& law, std::int32_t n) {
  if (n < 1 || n > kMaxEnumerationSize) {
    throw std::invalid_argument("exhaustive enumeration is limited to 1 <= n <= 8");
  }
  std::vector<WeightedTree> out;
  double total = 0.0;
  for (auto& counts : all_count_sequences(n)) {
    double weight = 1.0;
    for (const auto c : counts) weight *= law.pmf(c);
    if (weight == 0.0) continue;
    total += weight;
    out.push_back({PlaneTree::from_child_counts(std::move(counts)), weight});
  }
  if (total <= 0.0) throw std::invalid_argument("no tree of this size has positive probability");
  for (auto& wt : out) wt.probability /= total;
  return out;
}

SequenceLaw lukasiewicz_law(const OffspringLaw& law, std::int32_t n) {
  SequenceLaw result;
  for (const auto& wt : enumerate_conditioned_trees(law, n)) {
    result[lukasiewicz_of(wt.tree).values] += wt.probability;
  }
  return result;
}

SequenceLaw prim_path_law(const OffspringLaw& law, std::int32_t n) {
  SequenceLaw result;
  for (const auto& wt : enumerate_conditioned_trees(law, n)) {
    if (n == 1) {
      result[prim_path(wt.tree, EdgeWeights::from_values({0.0})).values] += wt.probability;
      continue;
    }
    for_each_rank_ordering(n, [&](const EdgeWeights& weights, double p_order) {
      result[prim_path(wt.tree, weights).values] += wt.probability * p_order;
    });
  }
  return result;
}

SequenceLaw fragmented_prim_counts_law(const OffspringLaw& law, std::int32_t n, double t) {
  if (n < 2) throw std::invalid_argument("fragmentation needs at least one edge");
  SequenceLaw result;
  for (const auto& wt : enumerate_conditioned_trees(law, n)) {
    for_each_rank_ordering(n, [&](const EdgeWeights& weights, double p_order) {
      const auto order = prim_order(wt.tree, weights);
      for (std::int32_t kept = 0; kept < n; ++kept) {
        const double s = (kept + 0.5) / static_cast<double>(n);
        const auto path = frag_prim_path(wt.tree, weights, order, s);
        std::vector<std::int32_t> counts(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < counts.size(); ++k) {
          counts[k] = path.values[k + 1] - path.values[k] + 1;
        }
        result[counts] += wt.probability * p_order * binomial_pmf(n - 1, kept, t);
      }
    });
  }
  return result;
}

SequenceLaw modified_walk_law(const OffspringLaw& law, std::int32_t n, double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("t must lie in (0, 1)");
  constexpr double kKeep = 0.25;
  constexpr double kCut = 0.75;
  if (!(kKeep <= t && t < kCut)) {
    throw std::invalid_argument("marker uniforms assume 0.25 <= t < 0.75");
  }
  SequenceLaw result;
  for (const auto& wt : enumerate_conditioned_trees(law, n)) {
    const auto counts = wt.tree.child_counts();
    std::vector<std::int32_t> xi(counts.size());
    for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = counts[i] - 1;
    std::vector<std::int32_t> kept(counts.size(), 0);
    // Odometer over every kept count 0..c_i per step.
    while (true) {
      std::vector<std::vector<double>> uniforms(counts.size());
      double prob = wt.probability;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        uniforms[i].assign(static_cast<std::size_t>(counts[i]), kCut);
        std::fill_n(uniforms[i].begin(), kept[i], kKeep);
        prob *= binomial_pmf(counts[i], kept[i], t);
      }
      result[modified_walk(xi, uniforms, t).thinned] += prob;
      std::size_t i = 0;
      while (i < kept.size() && kept[i] == counts[i]) kept[i++] = 0;
      if (i == kept.size()) break;
      ++kept[i];
    }
  }
  return result;
}

double max_abs_difference(const SequenceLaw& a, const SequenceLaw& b) {
  double worst = 0.0;
  for (const auto& [key, p] : a) {
    const auto it = b.find(key);
    worst = std::max(worst, std::abs(p - (it == b.end() ? 0.0 : it->second)));
  }
  for (const auto& [key, p] : b) {
    if (a.find(key) == a.end()) worst = std::max(worst, std::abs(p));
  }
  return worst;
}

}  // namespace fragtree
