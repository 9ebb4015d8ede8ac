#include "fragtree/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fragtree {
namespace {

void require_resolution(std::int64_t m) {
  if (m < 2) throw std::invalid_argument("grid resolution must be at least 2");
}

void remove_endpoint_trend(std::vector<double>& x) {
  const auto m = static_cast<double>(x.size() - 1);
  const double end = x.back();
  for (std::size_t j = 0; j < x.size(); ++j) x[j] -= end * (static_cast<double>(j) / m);
  x.back() = 0.0;
}

}  // namespace

GridPath brownian_bridge(std::int64_t m, Rng& rng) {
  require_resolution(m);
  GridPath path;
  path.kind = PathKind::kBridge;
  path.values.assign(static_cast<std::size_t>(m) + 1, 0.0);
  auto steps = std::span<double>(path.values).subspan(1);
  fill_normal(rng, steps, 1.0 / std::sqrt(static_cast<double>(m)));
  for (std::size_t j = 1; j < path.values.size(); ++j) path.values[j] += path.values[j - 1];
  remove_endpoint_trend(path.values);
  return path;
}

GridPath lattice_bridge_raw(const OffspringLaw& law, std::int64_t m, Rng& rng,
                            const GwSamplerOptions& options) {
  require_resolution(m);
  const auto counts = sample_conditioned_counts(law, m, m - 1, rng, options.max_attempts,
                                                options.method);
  const double scale = 1.0 / bn(law, m);
  GridPath path;
  path.kind = PathKind::kBridge;
  path.values.resize(static_cast<std::size_t>(m) + 1);
  path.values[0] = 0.0;
  std::int64_t walk = 0;
  for (std::size_t j = 0; j < counts.counts.size(); ++j) {
    walk += counts.counts[j] - 1;
    path.values[j + 1] = static_cast<double>(walk) * scale;
  }
  return path;
}

GridPath lattice_bridge(const OffspringLaw& law, std::int64_t m, Rng& rng,
                        const GwSamplerOptions& options) {
  auto path = lattice_bridge_raw(law, m, rng, options);
  remove_endpoint_trend(path.values);
  return path;
}

std::int64_t argmin_location(const GridPath& bridge) {
  if (bridge.values.size() < 2) throw std::invalid_argument("bridge needs at least two points");
  const auto last = bridge.values.end() - 1;
  return std::min_element(bridge.values.begin(), last) - bridge.values.begin();
}

GridPath vervaat(const GridPath& bridge) {
  if (bridge.kind != PathKind::kBridge) throw std::invalid_argument("vervaat expects a bridge");
  const auto m = static_cast<std::size_t>(bridge.resolution());
  const auto start = static_cast<std::size_t>(argmin_location(bridge));
  const double low = bridge.values[start];
  GridPath out;
  out.kind = PathKind::kExcursion;
  out.values.resize(m + 1);
  for (std::size_t j = 0; j < m; ++j) {
    out.values[j] = bridge.values[(start + j) % m] - low;
  }
  out.values[0] = 0.0;
  out.values[m] = 0.0;
  return out;
}

GridPath apply_drift(const GridPath& excursion, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("drift t must be nonnegative");
  if (excursion.kind != PathKind::kExcursion) {
    throw std::invalid_argument("drift applies to excursions");
  }
  const auto m = static_cast<double>(excursion.resolution());
  GridPath out;
  out.kind = PathKind::kDrifted;
  out.values.resize(excursion.values.size());
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    out.values[j] = excursion.values[j] - t * (static_cast<double>(j) / m);
  }
  return out;
}

std::vector<std::int64_t> ladder_epochs(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("path needs at least two points");
  const auto m = values.size() - 1;
  std::vector<std::int64_t> epochs;
  double running_min = values[0];
  for (std::size_t j = 1; j < m; ++j) {
    if (values[j] < running_min) {
      running_min = values[j];
      epochs.push_back(static_cast<std::int64_t>(j));
    }
  }
  epochs.push_back(static_cast<std::int64_t>(m));
  return epochs;
}

RankedMasses ladder_masses(const GridPath& drifted) {
  const auto epochs = ladder_epochs(drifted.values);
  std::vector<std::int64_t> gaps(epochs.size());
  std::int64_t previous = 0;
  for (std::size_t i = 0; i < epochs.size(); ++i) {
    gaps[i] = epochs[i] - previous;
    previous = epochs[i];
  }
  return RankedMasses(std::move(gaps), drifted.resolution());
}

RankedMasses drift_ladder_masses(const GridPath& excursion, double t) {
  return ladder_masses(apply_drift(excursion, t));
}

std::vector<RankedMasses> poisson_cut_trajectory(const PlaneTree& tree, const OffspringLaw& law,
                                                 std::span<const double> times, Rng& rng) {
  const auto n = tree.size();
  const double rate = bn(law, n) / static_cast<double>(n);
  std::vector<double> clocks(static_cast<std::size_t>(n), 0.0);
  for (std::size_t v = 1; v < clocks.size(); ++v) clocks[v] = standard_exponential(rng);
  std::vector<std::uint8_t> keep(clocks.size());
  std::vector<RankedMasses> out;
  out.reserve(times.size());
  for (const double t : times) {
    if (!(t >= 0.0)) throw std::invalid_argument("cut time must be nonnegative");
    const double level = t * rate;
    keep[0] = 1;
    for (std::size_t v = 1; v < clocks.size(); ++v) keep[v] = clocks[v] > level ? 1 : 0;
    out.emplace_back(forest_component_sizes(tree, keep), n);
  }
  return out;
}

RankedMasses poisson_cut_masses(const PlaneTree& tree, const OffspringLaw& law, double t,
                                Rng& rng) {
  const double times[] = {t};
  return std::move(poisson_cut_trajectory(tree, law, times, rng).front());
}

}  // namespace fragtree
