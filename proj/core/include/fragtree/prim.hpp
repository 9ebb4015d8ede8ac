#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fragtree/gwtree.hpp"
#include "fragtree/random.hpp"

namespace fragtree {

/// Distinct weights in [0, 1] on the edges of a tree, indexed by the child
/// endpoint: weight(v) belongs to the edge {parent(v), v}. Slot 0 (the root)
/// carries no edge.
class EdgeWeights {
 public:
  /// Validates range and distinctness; throws std::invalid_argument.
  static EdgeWeights from_values(std::vector<double> by_vertex);

  std::int32_t size() const noexcept { return static_cast<std::int32_t>(values_.size()); }
  double operator[](Vertex v) const { return values_[static_cast<std::size_t>(v)]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  friend EdgeWeights random_edge_weights(std::int32_t, Rng&);
  explicit EdgeWeights(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

/// I.i.d. uniform weights for a tree with n vertices. Distinctness is only
/// re-checked in debug builds; 53-bit uniforms collide with probability
/// about n^2 / 2^54.
EdgeWeights random_edge_weights(std::int32_t n, Rng& rng);

/// Vertices listed in the order Prim's algorithm reaches them from the root.
struct PrimOrder {
  std::vector<Vertex> order;  // order[k] = v(k)
  std::vector<std::int32_t> rank;  // rank[v] = k with v(k) = v
};

/// Coding walk W_s(0..n) along the Prim order; threshold 1 for the full tree.
struct PrimPath {
  std::vector<std::int32_t> values;
  double threshold{1.0};
};

PrimOrder prim_order(const PlaneTree& tree, const EdgeWeights& weights);

PrimPath prim_path(const PlaneTree& tree, const EdgeWeights& weights);
PrimPath prim_path(const PlaneTree& tree, const PrimOrder& order);

/// Prim path of the forest keeping the edges with weight <= s. The Prim order
/// does not depend on s, so one ordering serves every threshold.
PrimPath frag_prim_path(const PlaneTree& tree, const EdgeWeights& weights, double s);
PrimPath frag_prim_path(const PlaneTree& tree, const EdgeWeights& weights,
                        const PrimOrder& order, double s);

/// Thinned walk: xi_t(i) counts the U_i(j) <= t among the xi(i) + 1 marks of
/// step i, and X_t(k) = sum_{i <= k} (xi_t(i) - 1).
struct ThinnedWalk {
  std::vector<std::int32_t> thinned;  // xi_t(1..n)
  std::vector<std::int32_t> path;     // X_t(0..n)
};

ThinnedWalk modified_walk(std::span<const std::int32_t> increments,
                          const std::vector<std::vector<double>>& uniforms, double t);

}  // namespace fragtree
