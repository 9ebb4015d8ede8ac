#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "fragtree/continuum.hpp"
#include "fragtree/experiment.hpp"
#include "fragtree/figure.hpp"
#include "fragtree/gwtree.hpp"
#include "fragtree/intensity.hpp"

using namespace fragtree;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitStatFail = 2;

struct Globals {
  std::uint64_t seed{1};
  std::string config;
  std::string out;
  std::optional<int> threads;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::optional<ExperimentConfig> load_config(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  return config_from_json(nlohmann::json::parse(in));
}

int cmd_sample_tree(const Globals& g, const std::string& law_tag, std::optional<double> alpha,
                    std::int32_t n) {
  const auto law = resolve_law(law_tag, alpha);
  auto rng = make_stream(g.seed, 0, StreamTag::kTreeSample);
  const auto tree = sample_conditioned_gw(law, n, rng);
  const auto path = lukasiewicz_of(tree);
  Output out(g.out);
  nlohmann::ordered_json header;
  header["law"] = law.tag();
  header["n"] = n;
  header["B_n"] = bn(law, n);
  header["seed"] = g.seed;
  out.stream() << "# " << header.dump() << "\nk,W_lex,c\n";
  for (std::int32_t k = 0; k <= n; ++k) {
    out.stream() << k << ',' << path.values[static_cast<std::size_t>(k)] << ',';
    if (k < n) out.stream() << tree.child_count(k);
    out.stream() << '\n';
  }
  return kExitPass;
}

int cmd_pipeline(const Globals& g, Pipeline pipeline, const std::string& law_tag,
                 std::optional<double> alpha, std::int64_t size, const std::vector<double>& times,
                 std::int64_t reps) {
  const auto law = resolve_law(law_tag, alpha);
  if (reps < 1) throw std::invalid_argument("--reps must be at least 1");
  const auto results =
      run_pipeline(pipeline, law, size, times, reps, g.seed, resolve_threads(g.threads));
  Output out(g.out);
  write_jsonl(out.stream(), results, times);
  return kExitPass;
}

int cmd_converge(const Globals& g, const ExperimentConfig& config) {
  const auto report = run_convergence(config);
  auto j = report.to_json();
  j["config"] = config_to_json(config);
  const std::string path = g.out.empty() ? config.output : g.out;
  Output out(path);
  out.stream() << j.dump(2) << '\n';
  if (!path.empty() && path != "-") std::cout << report.to_json().dump(2) << '\n';
  return report.pass ? kExitPass : kExitStatFail;
}

int cmd_intensity(const Globals& g, double alpha, double t, const std::vector<double>& zs,
                  bool check_moment) {
  const StableDensityEvaluator eval(alpha);
  nlohmann::ordered_json j;
  j["alpha"] = alpha;
  j["t"] = t;
  j["laplace_exponent_constant"] = eval.laplace_constant();
  auto& values = j["values"] = nlohmann::ordered_json::array();
  for (const double z : zs) {
    values.push_back({{"z", z}, {"intensity", levy_intensity(alpha, t, z)}});
  }
  bool pass = true;
  if (check_moment) {
    const double moment = intensity_mass_moment(alpha, t);
    const double expected = 1.0 / ((alpha - 1.0) * t);
    const double residual = moment - expected;
    pass = std::abs(residual) <= 1e-4;
    j["moment"] = {{"value", moment}, {"expected", expected}, {"residual", residual}, {"pass", pass}};
  }
  Output out(g.out);
  out.stream() << j.dump(2) << '\n';
  return pass ? kExitPass : kExitStatFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fragmentation of conditioned Galton-Watson trees and stable excursions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Base seed for all random streams");
  app.add_option("--config", g.config, "JSON experiment config (see docs/config.md)");
  app.add_option("--out", g.out, "Output file ('-' or empty for stdout)");
  app.add_option("--threads", g.threads, "Worker threads (default: FRAG_THREADS or 1)");

  std::string law = "geometric-half";
  std::optional<double> alpha;
  std::int32_t n = 1000;
  std::int64_t reps = 100;
  std::vector<double> times = {1.0};

  auto* sample = app.add_subcommand("sample-tree", "Sample one conditioned tree as CSV");
  sample->add_option("--law", law, "Offspring law tag");
  sample->add_option("--alpha", alpha, "Tail index for a bare stable-tail law");
  sample->add_option("--n", n, "Tree size")->check(CLI::PositiveNumber);

  auto* fragment = app.add_subcommand("fragment", "Bernoulli edge-deletion fragment masses as JSONL");
  fragment->add_option("--law", law);
  fragment->add_option("--alpha", alpha);
  fragment->add_option("--n", n)->check(CLI::Range(2, 1 << 30));
  fragment->add_option("--times,--t", times)->delimiter(',');
  fragment->add_option("--reps", reps);

  std::string mode = "brownian";
  std::int64_t m = 4096;
  auto* excursion = app.add_subcommand("excursion", "Drift-ladder masses of excursions as JSONL");
  excursion->add_option("--mode", mode)->check(CLI::IsMember({"brownian", "lattice"}));
  excursion->add_option("--law", law);
  excursion->add_option("--alpha", alpha);
  excursion->add_option("--m", m)->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 30));
  excursion->add_option("--t,--times", times)->delimiter(',');
  excursion->add_option("--reps", reps);

  auto* crt = app.add_subcommand("crt-cut", "Poisson-cut fragment masses as JSONL");
  crt->add_option("--law", law);
  crt->add_option("--alpha", alpha);
  crt->add_option("--n", n)->check(CLI::Range(2, 1 << 30));
  crt->add_option("--t,--times", times)->delimiter(',');
  crt->add_option("--reps", reps);

  std::vector<std::int64_t> sizes;
  std::vector<std::string> pipelines;
  std::optional<std::int64_t> grid;
  std::optional<std::uint64_t> right_seed;
  double ks_threshold = 0.05;
  auto* converge = app.add_subcommand("converge", "Two-pipeline KS comparison; exit 2 on failure");
  converge->add_option("--law", law);
  converge->add_option("--alpha", alpha);
  converge->add_option("--sizes", sizes)->delimiter(',');
  converge->add_option("--grid", grid);
  converge->add_option("--times,--t", times)->delimiter(',');
  converge->add_option("--reps", reps);
  converge->add_option("--pipelines", pipelines)->delimiter(',');
  converge->add_option("--right-seed", right_seed);
  converge->add_option("--ks-threshold", ks_threshold);

  double t_intensity = 1.0;
  std::vector<double> zs = {1.0};
  bool check_moment = false;
  auto* intensity = app.add_subcommand("intensity", "Levy intensity values and identity residuals");
  intensity->add_option("--alpha", alpha)->required();
  intensity->add_option("--t", t_intensity);
  intensity->add_option("--z", zs)->delimiter(',');
  intensity->add_flag("--check-moment", check_moment);

  auto* figure = app.add_subcommand("reproduce-figure", "Write the worked-example CSV fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    const auto config = load_config(g.config);
    if (config && !g.threads) g.threads = config->threads;
    const auto pick_times = [&](CLI::App* sub) {
      return sub->count("--times") + sub->count("--t") == 0 && config ? config->times : times;
    };
    const auto pick_law = [&](CLI::App* sub) {
      return sub->count("--law") == 0 && config ? config->law : law;
    };
    const auto pick_alpha = [&](CLI::App* sub) {
      return sub->count("--alpha") == 0 && config ? config->alpha : alpha;
    };
    const auto pick_reps = [&](CLI::App* sub) {
      return sub->count("--reps") == 0 && config ? config->replicates : reps;
    };
    if (*sample) return cmd_sample_tree(g, law, alpha, n);
    if (*fragment) {
      const std::int64_t size = fragment->count("--n") == 0 && config && !config->sizes.empty()
                                    ? config->sizes.front() : n;
      return cmd_pipeline(g, Pipeline::kBernoulliFragment, pick_law(fragment), pick_alpha(fragment),
                          size, pick_times(fragment), pick_reps(fragment));
    }
    if (*excursion) {
      const auto pipeline = mode == "lattice" ? Pipeline::kDriftLadder : Pipeline::kBrownianExcursion;
      const std::int64_t size = excursion->count("--m") == 0 && config && config->grid ? *config->grid : m;
      return cmd_pipeline(g, pipeline, pick_law(excursion), pick_alpha(excursion), size,
                          pick_times(excursion), pick_reps(excursion));
    }
    if (*crt) {
      const std::int64_t size = crt->count("--n") == 0 && config && !config->sizes.empty()
                                    ? config->sizes.front() : n;
      return cmd_pipeline(g, Pipeline::kPoissonCut, pick_law(crt), pick_alpha(crt), size,
                          pick_times(crt), pick_reps(crt));
    }
    if (*converge) {
      ExperimentConfig c = config.value_or(ExperimentConfig{});
      if (!config) {
        c.sizes.clear();
        c.pipelines.clear();
      }
      if (converge->count("--law")) c.law = law;
      if (converge->count("--alpha")) c.alpha = alpha;
      if (!sizes.empty()) c.sizes = sizes;
      if (grid) c.grid = grid;
      if (converge->count("--times") + converge->count("--t") || !config) c.times = times;
      if (converge->count("--reps") || !config) c.replicates = reps;
      if (app.count("--seed") || !config) c.seed = g.seed;
      if (right_seed) c.right_seed = right_seed;
      if (!pipelines.empty()) {
        c.pipelines.clear();
        for (const auto& p : pipelines) c.pipelines.push_back(parse_pipeline(p));
      }
      if (c.pipelines.empty()) c.pipelines = {Pipeline::kBernoulliFragment};
      if (converge->count("--ks-threshold")) c.ks_threshold = ks_threshold;
      c.threads = resolve_threads(g.threads);
      return cmd_converge(g, c);
    }
    if (*intensity) return cmd_intensity(g, *alpha, t_intensity, zs, check_moment);
    if (*figure) {
      write_figure_fixture(g.out.empty() ? "figure" : g.out);
      return kExitPass;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
