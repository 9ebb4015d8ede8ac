#pragma once

// Quadratic reference implementations that follow the exploration rules
// word for word. Only meant for small trees in tests.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "fragtree/gwtree.hpp"
#include "fragtree/prim.hpp"

namespace fragtree::reference {

inline bool adjacent(const PlaneTree& tree, Vertex a, Vertex b) {
  return tree.parent(a) == b || tree.parent(b) == a;
}

// Edge {a, b} of the tree is identified by its child endpoint.
inline double edge_weight(const PlaneTree& tree, const EdgeWeights& w, Vertex a, Vertex b) {
  return tree.parent(a) == b ? w[a] : w[b];
}

// Repeatedly scans every edge leaving the visited set and takes the lightest.
inline std::vector<Vertex> literal_prim_order(const PlaneTree& tree, const EdgeWeights& w) {
  const auto n = tree.size();
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  std::vector<Vertex> order{0};
  visited[0] = true;
  while (static_cast<std::int32_t>(order.size()) < n) {
    double best = std::numeric_limits<double>::infinity();
    Vertex next = -1;
    for (Vertex u = 0; u < n; ++u) {
      if (!visited[static_cast<std::size_t>(u)]) continue;
      for (Vertex v = 0; v < n; ++v) {
        if (visited[static_cast<std::size_t>(v)] || !adjacent(tree, u, v)) continue;
        const double x = edge_weight(tree, w, u, v);
        if (x < best) {
          best = x;
          next = v;
        }
      }
    }
    visited[static_cast<std::size_t>(next)] = true;
    order.push_back(next);
  }
  return order;
}

struct ForestExploration {
  std::vector<Vertex> order;          // v_t(0..n-1)
  std::vector<std::int32_t> z;        // Z_t(0..n+1)
  std::vector<std::int32_t> w;        // W_t(0..n)
  std::vector<std::int64_t> sizes;    // gaps between successive zeros of Z_t
};

// Explores the forest keeping edges with weight <= s: the next vertex is
// the Prim-first vertex among the current forest neighbours of the visited
// set, or among all unvisited vertices when there are none.
inline ForestExploration literal_forest_exploration(const PlaneTree& tree, const EdgeWeights& w,
                                                    double s) {
  const auto n = tree.size();
  const auto prim = literal_prim_order(tree, w);
  std::vector<std::int32_t> prim_rank(static_cast<std::size_t>(n));
  for (std::int32_t k = 0; k < n; ++k) prim_rank[static_cast<std::size_t>(prim[static_cast<std::size_t>(k)])] = k;

  const auto kept = [&](Vertex a, Vertex b) {
    return adjacent(tree, a, b) && edge_weight(tree, w, a, b) <= s;
  };
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  ForestExploration out;
  out.z.push_back(0);
  const auto neighbours = [&] {
    std::vector<Vertex> result;
    for (Vertex v = 0; v < n; ++v) {
      if (visited[static_cast<std::size_t>(v)]) continue;
      for (Vertex u = 0; u < n; ++u) {
        if (visited[static_cast<std::size_t>(u)] && kept(u, v)) {
          result.push_back(v);
          break;
        }
      }
    }
    return result;
  };
  const auto prim_first = [&](const std::vector<Vertex>& candidates) {
    return *std::min_element(candidates.begin(), candidates.end(), [&](Vertex a, Vertex b) {
      return prim_rank[static_cast<std::size_t>(a)] < prim_rank[static_cast<std::size_t>(b)];
    });
  };

  out.order.push_back(0);
  visited[0] = true;
  while (true) {
    const auto frontier = neighbours();
    out.z.push_back(static_cast<std::int32_t>(frontier.size()));
    if (static_cast<std::int32_t>(out.order.size()) == n) break;
    Vertex next;
    if (!frontier.empty()) {
      next = prim_first(frontier);
    } else {
      std::vector<Vertex> rest;
      for (Vertex v = 0; v < n; ++v) {
        if (!visited[static_cast<std::size_t>(v)]) rest.push_back(v);
      }
      next = prim_first(rest);
    }
    visited[static_cast<std::size_t>(next)] = true;
    out.order.push_back(next);
  }
  out.z.push_back(0);

  out.w.push_back(0);
  for (const Vertex v : out.order) {
    std::int32_t c = 0;
    for (const Vertex child : tree.children(v)) c += w[child] <= s ? 1 : 0;
    out.w.push_back(out.w.back() + c - 1);
  }

  std::int64_t last_zero = 0;
  for (std::size_t k = 1; k + 1 < out.z.size(); ++k) {
    if (out.z[k] == 0) {
      out.sizes.push_back(static_cast<std::int64_t>(k) - last_zero);
      last_zero = static_cast<std::int64_t>(k);
    }
  }
  return out;
}

}  // namespace fragtree::reference
