#include "fragtree/fragmentation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace fragtree {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::int64_t size_of_root(std::size_t r) const { return size_[r]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::int64_t> size_;
};

UnionFind forest_at(const PlaneTree& tree, const EdgeWeights& weights, double s) {
  const auto n = static_cast<std::size_t>(tree.size());
  if (weights.size() != tree.size()) {
    throw std::invalid_argument("edge weights do not match the tree size");
  }
  UnionFind uf(n);
  for (std::size_t v = 1; v < n; ++v) {
    if (weights[static_cast<Vertex>(v)] <= s) {
      uf.unite(v, static_cast<std::size_t>(tree.parent(static_cast<Vertex>(v))));
    }
  }
  return uf;
}

}  // namespace

RankedMasses::RankedMasses(std::vector<std::int64_t> sizes, std::int64_t total)
    : sizes_(std::move(sizes)), total_(total) {
  if (total_ <= 0) throw std::invalid_argument("total mass must be positive");
  std::int64_t sum = 0;
  for (const auto s : sizes_) {
    if (s <= 0) throw std::invalid_argument("fragment sizes must be positive");
    sum += s;
  }
  if (sum != total_) {
    throw std::invalid_argument("fragment sizes sum to " + std::to_string(sum) +
                                ", expected " + std::to_string(total_));
  }
  std::sort(sizes_.begin(), sizes_.end(), std::greater<>{});
}

std::vector<double> RankedMasses::masses() const {
  std::vector<double> out(sizes_.size());
  for (std::size_t i = 0; i < sizes_.size(); ++i) out[i] = mass(i);
  return out;
}

std::size_t RankedMasses::count_above(double threshold) const noexcept {
  std::size_t k = 0;
  while (k < sizes_.size() && mass(k) > threshold) ++k;
  return k;
}

std::vector<std::int64_t> strict_record_epochs(std::span<const std::int32_t> values) {
  std::vector<std::int64_t> epochs;
  if (values.empty()) return epochs;
  auto running_min = values[0];
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] < running_min) {
      running_min = values[k];
      epochs.push_back(static_cast<std::int64_t>(k));
    }
  }
  return epochs;
}

std::vector<std::int64_t> ladder_components(std::span<const std::int32_t> values) {
  if (values.size() < 2) throw std::invalid_argument("path needs at least two values");
  const auto epochs = strict_record_epochs(values);
  const auto n = static_cast<std::int64_t>(values.size()) - 1;
  if (epochs.empty() || epochs.back() != n) {
    throw std::invalid_argument("path must end at a strict new minimum");
  }
  std::vector<std::int64_t> sizes(epochs.size());
  std::int64_t previous = 0;
  for (std::size_t i = 0; i < epochs.size(); ++i) {
    sizes[i] = epochs[i] - previous;
    previous = epochs[i];
  }
  return sizes;
}

RankedMasses ranked_masses(std::vector<std::int64_t> sizes, std::int64_t n) {
  return RankedMasses(std::move(sizes), n);
}

std::vector<std::int64_t> components_oracle(const PlaneTree& tree, const EdgeWeights& weights,
                                            double s) {
  auto uf = forest_at(tree, weights, s);
  std::vector<std::int64_t> sizes;
  for (std::size_t v = 0; v < static_cast<std::size_t>(tree.size()); ++v) {
    if (uf.find(v) == v) sizes.push_back(uf.size_of_root(v));
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>{});
  return sizes;
}

std::vector<std::int64_t> forest_component_sizes(const PlaneTree& tree,
                                                 std::span<const std::uint8_t> keep) {
  const auto n = static_cast<std::size_t>(tree.size());
  if (keep.size() != n) throw std::invalid_argument("keep mask does not match the tree size");
  UnionFind uf(n);
  for (std::size_t v = 1; v < n; ++v) {
    if (keep[v] != 0) uf.unite(v, static_cast<std::size_t>(tree.parent(static_cast<Vertex>(v))));
  }
  std::vector<std::int64_t> sizes;
  for (std::size_t v = 0; v < n; ++v) {
    if (uf.find(v) == v) sizes.push_back(uf.size_of_root(v));
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>{});
  return sizes;
}

std::vector<Vertex> component_labels(const PlaneTree& tree, const EdgeWeights& weights,
                                     double s) {
  auto uf = forest_at(tree, weights, s);
  const auto n = static_cast<std::size_t>(tree.size());
  std::vector<Vertex> smallest(n, -1);
  std::vector<Vertex> labels(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto r = uf.find(v);
    if (smallest[r] < 0) smallest[r] = static_cast<Vertex>(v);
    labels[v] = smallest[r];
  }
  return labels;
}

double fragmentation_threshold(double bn_value, std::int64_t n, double t) {
  return 1.0 - (bn_value / static_cast<double>(n)) * t;
}

FragmentationTrajectory fragmentation_process(const PlaneTree& tree, const EdgeWeights& weights,
                                              const OffspringLaw& law,
                                              std::span<const double> times,
                                              std::uint64_t seed) {
  FragmentationTrajectory traj;
  traj.n = tree.size();
  traj.law = law.tag();
  traj.bn = bn(law, traj.n);
  traj.seed = seed;
  const auto order = prim_order(tree, weights);
  double previous = -1.0;
  for (const double t : times) {
    if (!(t >= 0.0)) throw std::invalid_argument("times must be nonnegative");
    if (t < previous) throw std::invalid_argument("times must be sorted");
    previous = t;
    const double s = fragmentation_threshold(traj.bn, traj.n, t);
    traj.times.push_back(t);
    if (s < 0.0) {
      traj.states.emplace_back(std::vector<std::int64_t>(static_cast<std::size_t>(traj.n), 1),
                               traj.n);
      continue;
    }
    const auto path = frag_prim_path(tree, weights, order, std::min(s, 1.0));
    traj.states.push_back(ranked_masses(ladder_components(path), traj.n));
  }
  return traj;
}

}  // namespace fragtree
