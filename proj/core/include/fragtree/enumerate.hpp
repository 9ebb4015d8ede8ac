#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fragtree/gwtree.hpp"
#include "fragtree/offspring.hpp"

namespace fragtree {

struct WeightedTree {
  PlaneTree tree;
  double probability{0.0};
};

inline constexpr std::int32_t kMaxEnumerationSize = 8;

/// Every plane tree with n vertices, weighted by prod_u mu(c(u)) and
/// normalized. Throws std::invalid_argument for n outside [1, 8] or when the
/// law gives the event zero probability.
std::vector<WeightedTree> enumerate_conditioned_trees(const OffspringLaw& law, std::int32_t n);

/// Exact law of an integer sequence: sequence -> probability.
using SequenceLaw = std::map<std::vector<std::int32_t>, double>;

/// Law of the Lukasiewicz path of the conditioned tree.
SequenceLaw lukasiewicz_law(const OffspringLaw& law, std::int32_t n);

/// Law of the Prim path when the edge weights are i.i.d. uniform. Only the
/// relative order of the weights matters, so the (n-1)! rank orderings are
/// enumerated.
SequenceLaw prim_path_law(const OffspringLaw& law, std::int32_t n);

/// Law of the children counts (c_t(v(0)), ..., c_t(v(n-1))) along the Prim
/// order in the forest keeping edges with uniform weight <= t. Given the rank
/// ordering, the kept edges are the k lowest ranks with k ~ Bin(n-1, t).
SequenceLaw fragmented_prim_counts_law(const OffspringLaw& law, std::int32_t n, double t);

/// Law of (xi_t(1), ..., xi_t(n)) for the thinned walk, where xi + 1 is the
/// children-count sequence of the conditioned tree.
SequenceLaw modified_walk_law(const OffspringLaw& law, std::int32_t n, double t);

/// Largest absolute probability difference over the union of supports.
double max_abs_difference(const SequenceLaw& a, const SequenceLaw& b);

}  // namespace fragtree
