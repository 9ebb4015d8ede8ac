#pragma once

#include <cstdint>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragtree/fragmentation.hpp"
#include "fragtree/offspring.hpp"
#include "fragtree/random.hpp"

namespace fragtree {

enum class Pipeline { kBernoulliFragment, kDriftLadder, kPoissonCut, kBrownianExcursion };

Pipeline parse_pipeline(std::string_view name);
std::string_view pipeline_name(Pipeline pipeline);
StreamTag pipeline_stream(Pipeline pipeline);

/// Experiment description; see docs/config.md for the JSON schema.
struct ExperimentConfig {
  std::string law{"geometric-half"};
  std::optional<double> alpha;
  std::vector<std::int64_t> sizes;
  std::optional<std::int64_t> grid;
  std::vector<double> times;
  std::int64_t replicates{1000};
  std::uint64_t seed{1};
  std::optional<std::uint64_t> right_seed;
  std::vector<Pipeline> pipelines;
  std::string output;
  int threads{1};
  double ks_threshold{0.05};
  double count_threshold{0.01};

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// The law named by `tag`; a bare "stable-tail" takes its index from `alpha`.
OffspringLaw resolve_law(std::string_view tag, std::optional<double> alpha);

struct SideConfig {
  Pipeline pipeline;
  std::int64_t size;
  std::uint64_t seed;
};

/// Side 0 or 1 of a two-pipeline comparison.
SideConfig side_config(const ExperimentConfig& config, int side);

/// The seed used by side 1 when none is configured.
std::uint64_t derived_right_seed(std::uint64_t seed);

/// Ranked masses of one replicate at each time.
using ReplicateResult = std::vector<RankedMasses>;

ReplicateResult run_replicate(Pipeline pipeline, const OffspringLaw& law, std::int64_t size,
                              std::span<const double> times, std::uint64_t seed,
                              std::int64_t rep);

std::vector<ReplicateResult> run_pipeline(Pipeline pipeline, const OffspringLaw& law,
                                          std::int64_t size, std::span<const double> times,
                                          std::int64_t replicates, std::uint64_t seed,
                                          int threads);

struct TimeComparison {
  double t{0.0};
  double ks_largest{0.0};
  double ks_second{0.0};
  double ks_count_above{0.0};
  double w1_size_biased{0.0};
  bool pass{false};
};

struct ComparisonReport {
  std::vector<TimeComparison> per_time;
  std::int64_t left_samples{0};
  std::int64_t right_samples{0};
  double ks_threshold{0.05};
  bool pass{false};
  double runtime_seconds{0.0};

  nlohmann::ordered_json to_json() const;
};

/// Marginal comparison at every time. Pass/fail uses the largest-mass KS
/// statistic; the other fields are diagnostics.
ComparisonReport compare_samples(const std::vector<ReplicateResult>& left,
                                 const std::vector<ReplicateResult>& right,
                                 std::span<const double> times, double ks_threshold,
                                 double count_threshold = 0.01);

ComparisonReport run_convergence(const ExperimentConfig& config);

/// One JSON line {rep, t, masses} per replicate and time.
void write_jsonl(std::ostream& out, const std::vector<ReplicateResult>& results,
                 std::span<const double> times);

/// --threads if given, else FRAG_THREADS, else 1.
int resolve_threads(std::optional<int> requested);

}  // namespace fragtree
