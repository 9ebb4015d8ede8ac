#include "fragtree/gwtree.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace fragtree {

bool is_lukasiewicz_excursion(std::span<const std::int32_t> values) {
  if (values.size() < 2 || values.front() != 0 || values.back() != -1) return false;
  const auto n = values.size() - 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (values[k] < 0) return false;
    if (values[k + 1] - values[k] < -1) return false;
  }
  return true;
}

PlaneTree PlaneTree::from_child_counts(std::vector<std::int32_t> counts) {
  const auto n = counts.size();
  if (n == 0) throw std::invalid_argument("a plane tree has at least one vertex");
  if (n > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw std::invalid_argument("tree too large for 32-bit vertex indices");
  }

  PlaneTree tree;
  tree.parent_.assign(n, -1);
  tree.offsets_.assign(n + 1, 0);
  std::int64_t height = 0;  // Lukasiewicz value before vertex k
  for (std::size_t k = 0; k < n; ++k) {
    if (counts[k] < 0) throw std::invalid_argument("negative children count");
    if (k > 0 && height < 0) {
      throw std::invalid_argument("children counts close the tree before the last vertex");
    }
    height += counts[k] - 1;
    tree.offsets_[k + 1] = tree.offsets_[k] + counts[k];
  }
  if (height != -1) {
    throw std::invalid_argument("children counts must sum to n - 1");
  }

  tree.children_.assign(n - 1, 0);
  // Stack of (vertex, next child slot); a vertex is popped once all of its
  // children are placed.
  std::vector<std::pair<Vertex, std::int32_t>> stack;
  stack.reserve(64);
  stack.emplace_back(0, 0);
  for (std::size_t k = 1; k < n; ++k) {
    while (stack.back().second == counts[static_cast<std::size_t>(stack.back().first)]) {
      stack.pop_back();
    }
    auto& [parent, slot] = stack.back();
    const auto v = static_cast<Vertex>(k);
    tree.children_[static_cast<std::size_t>(tree.offsets_[static_cast<std::size_t>(parent)] + slot)] = v;
    tree.parent_[k] = parent;
    ++slot;
    stack.emplace_back(v, 0);
  }
  tree.counts_ = std::move(counts);
  return tree;
}

PlaneTree tree_from_lukasiewicz(const LukasiewiczPath& path) {
  if (!is_lukasiewicz_excursion(path.values)) {
    throw std::invalid_argument(
        "not a Lukasiewicz excursion (need W(0)=0, W(n)=-1, steps >= -1, W >= 0 before n)");
  }
  const auto n = path.values.size() - 1;
  std::vector<std::int32_t> counts(n);
  for (std::size_t k = 0; k < n; ++k) {
    counts[k] = path.values[k + 1] - path.values[k] + 1;
  }
  return PlaneTree::from_child_counts(std::move(counts));
}

LukasiewiczPath lukasiewicz_of(const PlaneTree& tree) {
  LukasiewiczPath path;
  const auto counts = tree.child_counts();
  path.values.resize(counts.size() + 1);
  path.values[0] = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    path.values[k + 1] = path.values[k] + counts[k] - 1;
  }
  return path;
}

std::size_t cycle_lemma_rotation(std::span<const std::int32_t> increments) {
  std::int64_t partial = 0;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::size_t best_step = 0;
  for (std::size_t k = 0; k < increments.size(); ++k) {
    partial += increments[k];
    if (partial < best) {
      best = partial;
      best_step = k + 1;
    }
  }
  if (partial != -1) {
    throw std::invalid_argument("cycle lemma needs increments summing to -1");
  }
  return best_step % increments.size();
}

PlaneTree sample_conditioned_gw(const OffspringLaw& law, std::int32_t n, Rng& rng,
                                const GwSamplerOptions& options) {
  if (n < 1) throw std::invalid_argument("tree size must be positive");
  auto drawn = sample_conditioned_counts(law, n, n - 1, rng, options.max_attempts,
                                         options.method);
  auto& counts = drawn.counts;
  std::vector<std::int32_t> increments(counts.size());
  std::transform(counts.begin(), counts.end(), increments.begin(),
                 [](std::int32_t c) { return c - 1; });
  const auto shift = cycle_lemma_rotation(increments);
  std::rotate(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(shift),
              counts.end());
  return PlaneTree::from_child_counts(std::move(counts));
}

}  // namespace fragtree
