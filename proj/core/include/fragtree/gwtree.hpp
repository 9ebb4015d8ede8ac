#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fragtree/offspring.hpp"
#include "fragtree/random.hpp"

namespace fragtree {

using Vertex = std::int32_t;

/// Rooted plane tree stored as flat arrays in lexicographic (depth-first)
/// order. Vertex 0 is the root; children of a vertex are listed left to right.
class PlaneTree {
 public:
  /// Builds the tree whose lexicographic children counts are `counts`.
  /// Throws std::invalid_argument unless the counts code a plane tree.
  static PlaneTree from_child_counts(std::vector<std::int32_t> counts);

  std::int32_t size() const noexcept { return static_cast<std::int32_t>(counts_.size()); }
  std::int32_t child_count(Vertex v) const { return counts_[static_cast<std::size_t>(v)]; }
  /// -1 for the root.
  Vertex parent(Vertex v) const { return parent_[static_cast<std::size_t>(v)]; }
  std::span<const Vertex> children(Vertex v) const {
    const auto begin = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v)]);
    const auto end = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1]);
    return std::span<const Vertex>(children_).subspan(begin, end - begin);
  }
  std::span<const std::int32_t> child_counts() const noexcept { return counts_; }
  std::span<const Vertex> parents() const noexcept { return parent_; }

  friend bool operator==(const PlaneTree& a, const PlaneTree& b) {
    return a.counts_ == b.counts_;
  }

 private:
  std::vector<std::int32_t> counts_;
  std::vector<Vertex> parent_;
  std::vector<std::int32_t> offsets_;
  std::vector<Vertex> children_;
};

/// Integer walk W(0..n) with W(0) = 0 and increments c(u(k)) - 1 along the
/// lexicographic order.
struct LukasiewiczPath {
  std::vector<std::int32_t> values;

  friend bool operator==(const LukasiewiczPath&, const LukasiewiczPath&) = default;
};

/// True iff W(0) = 0, W(n) = -1, increments >= -1 and W(k) >= 0 for k < n.
bool is_lukasiewicz_excursion(std::span<const std::int32_t> values);

PlaneTree tree_from_lukasiewicz(const LukasiewiczPath& path);
LukasiewiczPath lukasiewicz_of(const PlaneTree& tree);

/// Index r in [0, n) such that the cyclic shift starting at r turns
/// increments summing to -1 into a Lukasiewicz excursion: the position right
/// after the first global minimum of the partial sums.
std::size_t cycle_lemma_rotation(std::span<const std::int32_t> increments);

struct GwSamplerOptions {
  std::int64_t max_attempts = 1'000'000;
  ConditionedSampling method = ConditionedSampling::kMultinomial;
};

/// Galton-Watson tree with offspring law `law` conditioned to have n
/// vertices: i.i.d. children counts conditioned on summing to n - 1, rotated
/// by the cycle lemma, then decoded.
PlaneTree sample_conditioned_gw(const OffspringLaw& law, std::int32_t n, Rng& rng,
                                const GwSamplerOptions& options = {});

}  // namespace fragtree
