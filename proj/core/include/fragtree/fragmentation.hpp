#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fragtree/gwtree.hpp"
#include "fragtree/offspring.hpp"
#include "fragtree/prim.hpp"

namespace fragtree {

/// Non-increasing fragment masses size_i / total. Sizes are kept as integers
/// so the total is conserved exactly.
class RankedMasses {
 public:
  RankedMasses() = default;
  /// Sorts `sizes` in decreasing order. Throws std::invalid_argument if an
  /// entry is not positive or the sizes do not sum to `total`.
  RankedMasses(std::vector<std::int64_t> sizes, std::int64_t total);

  std::size_t count() const noexcept { return sizes_.size(); }
  std::int64_t total() const noexcept { return total_; }
  std::span<const std::int64_t> sizes() const noexcept { return sizes_; }
  /// i-th largest mass, 0 past the end.
  double mass(std::size_t i) const noexcept {
    return i < sizes_.size() ? static_cast<double>(sizes_[i]) / static_cast<double>(total_) : 0.0;
  }
  double largest() const noexcept { return mass(0); }
  std::vector<double> masses() const;
  /// Number of fragments with mass strictly above `threshold`.
  std::size_t count_above(double threshold) const noexcept;

  friend bool operator==(const RankedMasses&, const RankedMasses&) = default;

 private:
  std::vector<std::int64_t> sizes_;
  std::int64_t total_{1};
};

/// Gaps between successive strict running-minimum records of the path, in
/// exploration order. The path must start at 0 and end at its minimum.
std::vector<std::int64_t> ladder_components(std::span<const std::int32_t> values);
inline std::vector<std::int64_t> ladder_components(const PrimPath& path) {
  return ladder_components(path.values);
}

/// Epochs k >= 1 at which the path reaches a strictly new minimum.
std::vector<std::int64_t> strict_record_epochs(std::span<const std::int32_t> values);

RankedMasses ranked_masses(std::vector<std::int64_t> sizes, std::int64_t n);

/// Component sizes of the forest keeping edges with weight <= s, by
/// union-find. Sorted in decreasing order.
std::vector<std::int64_t> components_oracle(const PlaneTree& tree, const EdgeWeights& weights,
                                            double s);

/// Component sizes of the forest keeping the edge above v iff keep[v] != 0
/// (keep[0] is ignored). Sorted in decreasing order.
std::vector<std::int64_t> forest_component_sizes(const PlaneTree& tree,
                                                 std::span<const std::uint8_t> keep);

/// Component label of every vertex in the forest at threshold s: the
/// smallest vertex index in its component.
std::vector<Vertex> component_labels(const PlaneTree& tree, const EdgeWeights& weights, double s);

struct FragmentationTrajectory {
  std::vector<double> times;
  std::vector<RankedMasses> states;
  std::int64_t n{0};
  std::string law;
  double bn{0.0};
  std::uint64_t seed{0};
};

/// Threshold s_n(t) = 1 - (B_n / n) t; negative values mean every edge is cut.
double fragmentation_threshold(double bn_value, std::int64_t n, double t);

/// Ranked masses of the rescaled fragmentation at each time in `times`.
FragmentationTrajectory fragmentation_process(const PlaneTree& tree, const EdgeWeights& weights,
                                              const OffspringLaw& law,
                                              std::span<const double> times,
                                              std::uint64_t seed = 0);

}  // namespace fragtree
