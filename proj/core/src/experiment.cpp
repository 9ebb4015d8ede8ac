#include "fragtree/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include "fragtree/continuum.hpp"
#include "fragtree/gwtree.hpp"
#include "fragtree/parallel.hpp"
#include "fragtree/prim.hpp"
#include "fragtree/stats.hpp"

namespace fragtree {
namespace {

struct PipelineName {
  Pipeline pipeline;
  std::string_view name;
};

constexpr PipelineName kPipelines[] = {
    {Pipeline::kBernoulliFragment, "bernoulli-fragment"},
    {Pipeline::kDriftLadder, "drift-ladder"},
    {Pipeline::kPoissonCut, "poisson-cut"},
    {Pipeline::kBrownianExcursion, "brownian-excursion"},
};

bool is_continuum(Pipeline p) {
  return p == Pipeline::kDriftLadder || p == Pipeline::kBrownianExcursion;
}

std::vector<double> statistic(const std::vector<ReplicateResult>& results, std::size_t time_index,
                              auto extract) {
  std::vector<double> out;
  out.reserve(results.size());
  for (const auto& r : results) out.push_back(extract(r.at(time_index)));
  return out;
}

std::vector<double> size_biased_sample(const std::vector<ReplicateResult>& results,
                                       std::size_t time_index) {
  std::vector<double> out;
  out.reserve(results.size());
  for (std::size_t rep = 0; rep < results.size(); ++rep) {
    const auto& masses = results[rep].at(time_index);
    auto rng = make_stream(0x5eed5eedULL, rep * 1024 + time_index);
    auto target = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(masses.total())));
    for (const auto size : masses.sizes()) {
      if (target < size) {
        out.push_back(static_cast<double>(size) / static_cast<double>(masses.total()));
        break;
      }
      target -= size;
    }
  }
  return out;
}

}  // namespace

Pipeline parse_pipeline(std::string_view name) {
  for (const auto& p : kPipelines) {
    if (p.name == name) return p.pipeline;
  }
  throw std::invalid_argument("unknown pipeline '" + std::string(name) + "'");
}

std::string_view pipeline_name(Pipeline pipeline) {
  for (const auto& p : kPipelines) {
    if (p.pipeline == pipeline) return p.name;
  }
  return "unknown";
}

StreamTag pipeline_stream(Pipeline pipeline) {
  switch (pipeline) {
    case Pipeline::kBernoulliFragment: return StreamTag::kBernoulliFragment;
    case Pipeline::kDriftLadder: return StreamTag::kLatticeExcursion;
    case Pipeline::kPoissonCut: return StreamTag::kPoissonCut;
    case Pipeline::kBrownianExcursion: return StreamTag::kBrownianExcursion;
  }
  return StreamTag::kGeneric;
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  if (sizes.empty() && !grid) throw std::invalid_argument("config needs sizes or grid");
  for (const auto n : sizes) {
    if (n < 2) throw std::invalid_argument("sizes must be at least 2");
  }
  if (grid && *grid < 2) throw std::invalid_argument("grid must be at least 2");
  if (times.empty()) throw std::invalid_argument("config needs at least one time");
  double previous = 0.0;
  for (const double t : times) {
    if (!(t >= 0.0)) throw std::invalid_argument("times must be nonnegative");
    if (t < previous) throw std::invalid_argument("times must be sorted");
    previous = t;
  }
  if (pipelines.empty() || pipelines.size() > 2) {
    throw std::invalid_argument("config needs one or two pipelines");
  }
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  static const char* const kKnown[] = {"law", "alpha", "sizes", "grid", "times", "replicates",
                                      "seed", "right_seed", "pipelines", "output", "threads",
                                      "ks_threshold", "count_threshold"};
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  ExperimentConfig c;
  c.law = j.value("law", c.law);
  if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
  if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<std::int64_t>>();
  if (j.contains("grid")) c.grid = j.at("grid").get<std::int64_t>();
  c.times = j.value("times", std::vector<double>{1.0});
  c.replicates = j.value("replicates", c.replicates);
  c.seed = j.value("seed", c.seed);
  if (j.contains("right_seed")) c.right_seed = j.at("right_seed").get<std::uint64_t>();
  for (const auto& name : j.value("pipelines", std::vector<std::string>{"bernoulli-fragment"})) {
    c.pipelines.push_back(parse_pipeline(name));
  }
  c.output = j.value("output", c.output);
  c.threads = j.value("threads", c.threads);
  c.ks_threshold = j.value("ks_threshold", c.ks_threshold);
  c.count_threshold = j.value("count_threshold", c.count_threshold);
  c.validate();
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["law"] = c.law;
  if (c.alpha) j["alpha"] = *c.alpha;
  j["sizes"] = c.sizes;
  if (c.grid) j["grid"] = *c.grid;
  j["times"] = c.times;
  j["replicates"] = c.replicates;
  j["seed"] = c.seed;
  if (c.right_seed) j["right_seed"] = *c.right_seed;
  std::vector<std::string> names;
  for (const auto p : c.pipelines) names.emplace_back(pipeline_name(p));
  j["pipelines"] = names;
  if (!c.output.empty()) j["output"] = c.output;
  j["threads"] = c.threads;
  j["ks_threshold"] = c.ks_threshold;
  j["count_threshold"] = c.count_threshold;
  return j;
}

OffspringLaw resolve_law(std::string_view tag, std::optional<double> alpha) {
  if (tag == "stable-tail") {
    if (!alpha) throw std::invalid_argument("stable-tail needs alpha");
    return OffspringLaw::stable_tail(*alpha);
  }
  auto law = OffspringLaw::from_tag(tag);
  if (alpha && std::abs(*alpha - law.alpha()) > 1e-12) {
    throw std::invalid_argument("alpha does not match the law '" + std::string(tag) + "'");
  }
  return law;
}

std::uint64_t derived_right_seed(std::uint64_t seed) {
  return seed ^ 0x9e3779b97f4a7c15ULL;
}

SideConfig side_config(const ExperimentConfig& config, int side) {
  const auto index = static_cast<std::size_t>(side);
  SideConfig out;
  out.pipeline = config.pipelines.at(std::min(index, config.pipelines.size() - 1));
  if (is_continuum(out.pipeline) && config.grid) {
    out.size = *config.grid;
  } else if (!config.sizes.empty()) {
    out.size = config.sizes.at(std::min(index, config.sizes.size() - 1));
  } else {
    out.size = *config.grid;
  }
  out.seed = side == 0 ? config.seed : config.right_seed.value_or(derived_right_seed(config.seed));
  return out;
}

ReplicateResult run_replicate(Pipeline pipeline, const OffspringLaw& law, std::int64_t size,
                              std::span<const double> times, std::uint64_t seed,
                              std::int64_t rep) {
  auto rng = make_stream(seed, static_cast<std::uint64_t>(rep), pipeline_stream(pipeline));
  const auto n32 = static_cast<std::int32_t>(size);
  switch (pipeline) {
    case Pipeline::kBernoulliFragment: {
      const auto tree = sample_conditioned_gw(law, n32, rng);
      const auto weights = random_edge_weights(n32, rng);
      return fragmentation_process(tree, weights, law, times, seed).states;
    }
    case Pipeline::kPoissonCut: {
      const auto tree = sample_conditioned_gw(law, n32, rng);
      return poisson_cut_trajectory(tree, law, times, rng);
    }
    case Pipeline::kDriftLadder:
    case Pipeline::kBrownianExcursion: {
      const auto bridge = pipeline == Pipeline::kDriftLadder ? lattice_bridge(law, size, rng)
                                                              : brownian_bridge(size, rng);
      const auto excursion = vervaat(bridge);
      ReplicateResult out;
      out.reserve(times.size());
      for (const double t : times) out.push_back(drift_ladder_masses(excursion, t));
      return out;
    }
  }
  throw std::logic_error("unhandled pipeline");
}

std::vector<ReplicateResult> run_pipeline(Pipeline pipeline, const OffspringLaw& law,
                                          std::int64_t size, std::span<const double> times,
                                          std::int64_t replicates, std::uint64_t seed,
                                          int threads) {
  return parallel_map(replicates, threads, [&](std::int64_t rep) {
    return run_replicate(pipeline, law, size, times, seed, rep);
  });
}

nlohmann::ordered_json ComparisonReport::to_json() const {
  nlohmann::ordered_json j;
  j["pass"] = pass;
  j["ks_threshold"] = ks_threshold;
  j["left_samples"] = left_samples;
  j["right_samples"] = right_samples;
  j["runtime_seconds"] = runtime_seconds;
  auto& rows = j["per_time"] = nlohmann::ordered_json::array();
  for (const auto& row : per_time) {
    nlohmann::ordered_json r;
    r["t"] = row.t;
    r["ks_largest"] = row.ks_largest;
    r["ks_second"] = row.ks_second;
    r["ks_count_above"] = row.ks_count_above;
    r["w1_size_biased"] = row.w1_size_biased;
    r["pass"] = row.pass;
    rows.push_back(std::move(r));
  }
  return j;
}

ComparisonReport compare_samples(const std::vector<ReplicateResult>& left,
                                 const std::vector<ReplicateResult>& right,
                                 std::span<const double> times, double ks_threshold,
                                 double count_threshold) {
  ComparisonReport report;
  report.left_samples = static_cast<std::int64_t>(left.size());
  report.right_samples = static_cast<std::int64_t>(right.size());
  report.ks_threshold = ks_threshold;
  report.pass = true;
  const auto largest = [](const RankedMasses& m) { return m.mass(0); };
  const auto second = [](const RankedMasses& m) { return m.mass(1); };
  const auto above = [count_threshold](const RankedMasses& m) {
    return static_cast<double>(m.count_above(count_threshold));
  };
  for (std::size_t i = 0; i < times.size(); ++i) {
    TimeComparison row;
    row.t = times[i];
    row.ks_largest = ks_two_sample(statistic(left, i, largest), statistic(right, i, largest));
    row.ks_second = ks_two_sample(statistic(left, i, second), statistic(right, i, second));
    row.ks_count_above = ks_two_sample(statistic(left, i, above), statistic(right, i, above));
    row.w1_size_biased = wasserstein1(size_biased_sample(left, i), size_biased_sample(right, i));
    row.pass = row.ks_largest < ks_threshold;
    report.pass = report.pass && row.pass;
    report.per_time.push_back(row);
  }
  return report;
}

ComparisonReport run_convergence(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto law = resolve_law(config.law, config.alpha);
  const auto left = side_config(config, 0);
  const auto right = side_config(config, 1);
  const auto a = run_pipeline(left.pipeline, law, left.size, config.times, config.replicates,
                              left.seed, config.threads);
  const auto b = run_pipeline(right.pipeline, law, right.size, config.times, config.replicates,
                              right.seed, config.threads);
  auto report = compare_samples(a, b, config.times, config.ks_threshold, config.count_threshold);
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void write_jsonl(std::ostream& out, const std::vector<ReplicateResult>& results,
                 std::span<const double> times) {
  for (std::size_t rep = 0; rep < results.size(); ++rep) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      nlohmann::ordered_json j;
      j["rep"] = rep;
      j["t"] = times[i];
      j["masses"] = results[rep].at(i).masses();
      out << j.dump() << '\n';
    }
  }
}

int resolve_threads(std::optional<int> requested) {
  if (requested) {
    if (*requested < 1) throw std::invalid_argument("--threads must be at least 1");
    return *requested;
  }
  if (const char* env = std::getenv("FRAG_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 1 || value > 4096) {
      throw std::invalid_argument("FRAG_THREADS must be a positive integer");
    }
    return static_cast<int>(value);
  }
  return 1;
}

}  // namespace fragtree
