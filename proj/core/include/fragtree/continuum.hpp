#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fragtree/fragmentation.hpp"
#include "fragtree/gwtree.hpp"
#include "fragtree/offspring.hpp"
#include "fragtree/random.hpp"

namespace fragtree {

enum class PathKind { kBridge, kExcursion, kDrifted };

/// Values x(j) at the grid points j/m, j = 0..m.
struct GridPath {
  PathKind kind{PathKind::kBridge};
  std::vector<double> values;

  std::int64_t resolution() const noexcept { return static_cast<std::int64_t>(values.size()) - 1; }
};

/// Gaussian bridge on the grid: cumulative N(0, 1/m) sums with the linear
/// interpolation of the endpoint removed.
GridPath brownian_bridge(std::int64_t m, Rng& rng);

/// Walk with i.i.d. increments Y - 1 conditioned to end at -1, divided by
/// B_m. The endpoint is -1/B_m.
GridPath lattice_bridge_raw(const OffspringLaw& law, std::int64_t m, Rng& rng,
                            const GwSamplerOptions& options = {});

/// lattice_bridge_raw with (j/m)/B_m added so both endpoints are 0.
GridPath lattice_bridge(const OffspringLaw& law, std::int64_t m, Rng& rng,
                        const GwSamplerOptions& options = {});

/// Smallest index of the global minimum over j = 0..m-1.
std::int64_t argmin_location(const GridPath& bridge);

/// Cyclic rotation to the first minimum, shifted so the minimum is 0.
GridPath vervaat(const GridPath& bridge);

/// y(j) = x(j) - t j / m.
GridPath apply_drift(const GridPath& excursion, double t);

/// Strict running-minimum records of y in 1..m-1, with m appended.
std::vector<std::int64_t> ladder_epochs(std::span<const double> values);

/// Ranked gap lengths between successive ladder epochs, divided by m.
RankedMasses ladder_masses(const GridPath& drifted);

RankedMasses drift_ladder_masses(const GridPath& excursion, double t);

/// Cuts every edge independently with probability 1 - exp(-t B_n / n).
RankedMasses poisson_cut_masses(const PlaneTree& tree, const OffspringLaw& law, double t,
                                Rng& rng);

/// One exponential clock per edge, read at every time of `times`; the
/// partitions are nested.
std::vector<RankedMasses> poisson_cut_trajectory(const PlaneTree& tree, const OffspringLaw& law,
                                                 std::span<const double> times, Rng& rng);

}  // namespace fragtree
