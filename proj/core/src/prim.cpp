#include "fragtree/prim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace fragtree {
namespace {

bool has_duplicates(std::span<const double> values) {
  if (values.size() < 3) return false;
  std::vector<double> sorted(values.begin() + 1, values.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

void check_threshold(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("fragmentation threshold must lie in [0, 1]");
  }
}

}  // namespace

EdgeWeights EdgeWeights::from_values(std::vector<double> by_vertex) {
  if (by_vertex.empty()) throw std::invalid_argument("edge weights need a root slot");
  by_vertex[0] = 0.0;
  for (std::size_t v = 1; v < by_vertex.size(); ++v) {
    if (!(by_vertex[v] >= 0.0 && by_vertex[v] <= 1.0)) {
      throw std::invalid_argument("edge weight outside [0, 1] at vertex " + std::to_string(v));
    }
  }
  if (has_duplicates(by_vertex)) {
    throw std::invalid_argument("edge weights must be distinct");
  }
  return EdgeWeights(std::move(by_vertex));
}

EdgeWeights random_edge_weights(std::int32_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("tree size must be positive");
  std::vector<double> values(static_cast<std::size_t>(n));
  values[0] = 0.0;
  for (std::size_t v = 1; v < values.size(); ++v) values[v] = uniform01(rng);
  assert(!has_duplicates(values));
  return EdgeWeights(std::move(values));
}

PrimOrder prim_order(const PlaneTree& tree, const EdgeWeights& weights) {
  const auto n = tree.size();
  if (weights.size() != n) {
    throw std::invalid_argument("edge weights do not match the tree size");
  }
  PrimOrder result;
  result.order.reserve(static_cast<std::size_t>(n));
  result.rank.assign(static_cast<std::size_t>(n), -1);

  // Frontier edges all join a visited parent to an unvisited child, so the
  // heap holds child vertices keyed by their parent-edge weight.
  using Entry = std::pair<double, Vertex>;
  std::vector<Entry> heap;
  heap.reserve(64);
  const auto push_children = [&](Vertex v) {
    for (const Vertex c : tree.children(v)) {
      heap.emplace_back(weights[c], c);
      std::push_heap(heap.begin(), heap.end(), std::greater<>{});
    }
  };

  result.order.push_back(0);
  result.rank[0] = 0;
  push_children(0);
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
    const Vertex v = heap.back().second;
    heap.pop_back();
    result.rank[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(result.order.size());
    result.order.push_back(v);
    push_children(v);
  }
  return result;
}

PrimPath prim_path(const PlaneTree& tree, const PrimOrder& order) {
  PrimPath path;
  path.threshold = 1.0;
  path.values.resize(order.order.size() + 1);
  path.values[0] = 0;
  for (std::size_t k = 0; k < order.order.size(); ++k) {
    path.values[k + 1] = path.values[k] + tree.child_count(order.order[k]) - 1;
  }
  return path;
}

PrimPath prim_path(const PlaneTree& tree, const EdgeWeights& weights) {
  return prim_path(tree, prim_order(tree, weights));
}

PrimPath frag_prim_path(const PlaneTree& tree, const EdgeWeights& weights,
                        const PrimOrder& order, double s) {
  check_threshold(s);
  PrimPath path;
  path.threshold = s;
  path.values.resize(order.order.size() + 1);
  path.values[0] = 0;
  for (std::size_t k = 0; k < order.order.size(); ++k) {
    std::int32_t kept = 0;
    for (const Vertex c : tree.children(order.order[k])) {
      kept += weights[c] <= s ? 1 : 0;
    }
    path.values[k + 1] = path.values[k] + kept - 1;
  }
  return path;
}

PrimPath frag_prim_path(const PlaneTree& tree, const EdgeWeights& weights, double s) {
  check_threshold(s);
  return frag_prim_path(tree, weights, prim_order(tree, weights), s);
}

ThinnedWalk modified_walk(std::span<const std::int32_t> increments,
                          const std::vector<std::vector<double>>& uniforms, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("t must lie in [0, 1]");
  if (uniforms.size() != increments.size()) {
    throw std::invalid_argument("need one row of uniforms per increment");
  }
  ThinnedWalk walk;
  walk.thinned.resize(increments.size());
  walk.path.resize(increments.size() + 1);
  walk.path[0] = 0;
  for (std::size_t i = 0; i < increments.size(); ++i) {
    if (increments[i] < -1) throw std::invalid_argument("increments must be >= -1");
    const auto& row = uniforms[i];
    if (row.size() != static_cast<std::size_t>(increments[i] + 1)) {
      throw std::invalid_argument("row " + std::to_string(i + 1) + " needs " +
                                  std::to_string(increments[i] + 1) + " uniforms, got " +
                                  std::to_string(row.size()));
    }
    const auto kept = std::count_if(row.begin(), row.end(), [t](double u) { return u <= t; });
    walk.thinned[i] = static_cast<std::int32_t>(kept);
    walk.path[i + 1] = walk.path[i] + walk.thinned[i] - 1;
  }
  return walk;
}

}  // namespace fragtree
