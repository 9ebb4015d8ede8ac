#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "fragtree/continuum.hpp"
#include "fragtree/enumerate.hpp"
#include "fragtree/experiment.hpp"
#include "fragtree/figure.hpp"
#include "fragtree/fragmentation.hpp"
#include "fragtree/intensity.hpp"
#include "fragtree/stats.hpp"

using namespace fragtree;

namespace {

struct Outcome {
  bool pass{false};
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int threads() { return resolve_threads(std::nullopt); }

Outcome figure_fixture() {
  const auto dir = std::filesystem::temp_directory_path() / "fragtree_acceptance_figure";
  write_figure_fixture(dir);
  const std::filesystem::path golden = FRAGTREE_GOLDEN_DIR "/figure";
  std::string mismatched;
  for (const char* name : {"tree.csv", "paths.csv", "masses.csv"}) {
    if (read_file(dir / name) != read_file(golden / name)) mismatched += std::string(" ") + name;
  }
  std::filesystem::remove_all(dir);
  const auto tree = figure_tree();
  const auto w = figure_weights();
  const auto masses = ranked_masses(ladder_components(frag_prim_path(tree, w, kFigureThreshold)), 17);
  const bool masses_ok = masses.sizes().size() == 3 && masses.sizes()[0] == 8 &&
                         masses.sizes()[1] == 5 && masses.sizes()[2] == 4;
  if (!mismatched.empty()) return {false, "golden mismatch:" + mismatched};
  return {masses_ok, "golden files identical; masses (8/17, 5/17, 4/17)"};
}

Outcome oracle_equivalence() {
  auto rng = make_stream(20240601, 0);
  const OffspringLaw laws[] = {OffspringLaw::geometric_half(), OffspringLaw::poisson_one(),
                               OffspringLaw::stable_tail(1.5), OffspringLaw::stable_tail(1.2)};
  const int instances = 2000;
  for (int i = 0; i < instances; ++i) {
    const auto& law = laws[i % 4];
    const auto n = static_cast<std::int32_t>(1 + uniform_below(rng, 200));
    const auto tree = sample_conditioned_gw(law, n, rng);
    const auto weights = random_edge_weights(n, rng);
    const double s = uniform01(rng);
    auto ladder = ladder_components(frag_prim_path(tree, weights, s));
    std::sort(ladder.begin(), ladder.end(), std::greater<>{});
    if (ladder != components_oracle(tree, weights, s)) {
      return {false, "mismatch at instance " + std::to_string(i)};
    }
  }
  return {true, std::to_string(instances) + " instances, all multisets equal"};
}

Outcome prim_law_matches_lukasiewicz() {
  const auto law = OffspringLaw::geometric_half();
  double worst = 0.0;
  for (std::int32_t n = 3; n <= 5; ++n) {
    worst = std::max(worst, max_abs_difference(prim_path_law(law, n), lukasiewicz_law(law, n)));
  }
  return {worst <= 1e-12, "max |P_prim - P_lex| = " + fmt("%.3g", worst)};
}

Outcome thinned_walk_law_matches() {
  const auto law = OffspringLaw::geometric_half();
  double worst = 0.0;
  for (std::int32_t n = 3; n <= 4; ++n) {
    worst = std::max(worst, max_abs_difference(fragmented_prim_counts_law(law, n, 0.5),
                                               modified_walk_law(law, n, 0.5)));
  }
  return {worst <= 1e-12, "max |P_forest - P_walk| = " + fmt("%.3g", worst)};
}

std::string describe(const ComparisonReport& r) {
  std::string out;
  for (const auto& row : r.per_time) {
    out += " t=" + fmt("%g", row.t) + ":KS=" + fmt("%.4f", row.ks_largest);
  }
  return out;
}

ComparisonReport compare(const char* law, std::optional<double> alpha, Pipeline left,
                         std::int64_t left_size, Pipeline right, std::int64_t right_size,
                         std::vector<double> times, std::uint64_t seed) {
  ExperimentConfig c;
  c.law = law;
  c.alpha = alpha;
  c.sizes = {left_size, right_size};
  c.times = std::move(times);
  c.replicates = 5000;
  c.seed = seed;
  c.pipelines = {left, right};
  c.threads = threads();
  return run_convergence(c);
}

Outcome self_convergence() {
  bool pass = true;
  std::string detail;
  const std::pair<const char*, std::optional<double>> laws[] = {{"geometric-half", std::nullopt},
                                                                {"stable-tail", 1.5}};
  for (const auto& [law, alpha] : laws) {
    const auto r = compare(law, alpha, Pipeline::kBernoulliFragment, 1000,
                           Pipeline::kBernoulliFragment, 8000, {0.5, 1.0, 2.0}, 501);
    pass = pass && r.pass;
    detail += std::string(detail.empty() ? "" : ";") + " alpha=" + (alpha ? fmt("%g", *alpha) : "2") +
              describe(r);
  }
  return {pass, detail};
}

Outcome continuum_coupling() {
  const auto r = compare("geometric-half", std::nullopt, Pipeline::kBernoulliFragment, 8192,
                         Pipeline::kBrownianExcursion, 8192, {1.0}, 601);
  return {r.pass, describe(r)};
}

Outcome poisson_proxy() {
  const auto r = compare("geometric-half", std::nullopt, Pipeline::kPoissonCut, 4096,
                         Pipeline::kBernoulliFragment, 4096, {0.5, 1.0}, 701);
  return {r.pass, describe(r)};
}

Outcome nesting_and_conservation() {
  const std::vector<double> times = {0.0, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0};
  const auto law = OffspringLaw::stable_tail(1.5);
  const auto geometric = OffspringLaw::geometric_half();
  std::int64_t paths = 0;
  for (int i = 0; i < 1500; ++i) {
    auto rng = make_stream(801, static_cast<std::uint64_t>(i), StreamTag::kLatticeExcursion);
    GridPath bridge;
    switch (i % 3) {
      case 0: bridge = brownian_bridge(4096, rng); break;
      case 1: bridge = lattice_bridge(law, 4096, rng); break;
      default: bridge = lattice_bridge(geometric, 4096, rng); break;
    }
    const auto exc = vervaat(bridge);
    std::vector<std::int64_t> previous;
    for (const double t : times) {
      const auto drifted = apply_drift(exc, t);
      const auto epochs = ladder_epochs(drifted.values);
      if (!std::includes(epochs.begin(), epochs.end(), previous.begin(), previous.end())) {
        return {false, "nesting violated on path " + std::to_string(i) + " at t=" + fmt("%g", t)};
      }
      const auto masses = ladder_masses(drifted);
      std::int64_t total = 0;
      for (const auto s : masses.sizes()) total += s;
      double sum = 0.0;
      for (const double m : masses.masses()) sum += m;
      if (total != masses.total() || std::abs(sum - 1.0) > 1e-12) {
        return {false, "mass not conserved on path " + std::to_string(i)};
      }
      previous = epochs;
    }
    ++paths;
  }
  return {true, std::to_string(paths) + " paths x " + std::to_string(times.size()) +
                    " times; nested records, integer gaps sum to m"};
}

Outcome intensity_identities() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double worst_moment = 0.0;
  for (const double alpha : {1.5, 2.0}) {
    for (const double t : {0.5, 1.0, 2.0}) {
      const double expected = 1.0 / ((alpha - 1.0) * t);
      worst_moment = std::max(worst_moment, std::abs(intensity_mass_moment(alpha, t) - expected));
    }
  }
  const double norm = std::abs(integrate_density(1.5, 1.0, -inf, inf) - 1.0);
  const double left = std::abs(integrate_density(1.5, 1.0, -inf, 0.0) - 1.0 / 1.5);
  double worst_closed = 0.0;
  for (const double t : {0.5, 1.0, 2.0}) {
    for (const double z : {0.05, 0.5, 1.0, 3.0, 10.0}) {
      const double expected = std::pow(z, -1.5) / std::sqrt(2.0 * M_PI) * std::exp(-t * t * z / 2.0);
      worst_closed = std::max(worst_closed, std::abs(levy_intensity(2.0, t, z) - expected) / expected);
    }
  }
  const bool pass = norm <= 1e-6 && left <= 1e-5 && worst_moment <= 1e-4 && worst_closed <= 1e-12;
  return {pass, "|int p - 1|=" + fmt("%.2g", norm) + " |P(X<=0) - 2/3|=" + fmt("%.2g", left) +
                    " moment err=" + fmt("%.2g", worst_moment) +
                    " closed-form rel err=" + fmt("%.2g", worst_closed)};
}

Outcome argmin_uniformity() {
  const int reps = 10000;
  const std::int64_t m = 4096;
  std::vector<std::int64_t> bins(20, 0);
  for (int r = 0; r < reps; ++r) {
    auto rng = make_stream(1001, static_cast<std::uint64_t>(r), StreamTag::kBrownianExcursion);
    const auto j = argmin_location(brownian_bridge(m, rng));
    ++bins[static_cast<std::size_t>(j * 20 / m)];
  }
  const auto chi = chi_square_uniform(bins);
  return {chi.p_value > 0.001, "chi2=" + fmt("%.2f", chi.statistic) + " p=" + fmt("%.4f", chi.p_value)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "figure fixture", 1.0, figure_fixture},
      {2, "ladder/union-find oracle equivalence", 30.0, oracle_equivalence},
      {3, "Prim path law equals Lukasiewicz law", 60.0, prim_law_matches_lukasiewicz},
      {4, "fragmented Prim counts equal thinned walk law", 120.0, thinned_walk_law_matches},
      {5, "self-convergence n=1000 vs n=8000", 600.0, self_convergence},
      {6, "discrete vs Brownian drift-ladder coupling", 300.0, continuum_coupling},
      {7, "Poisson-cut vs Bernoulli pipeline", 300.0, poisson_proxy},
      {8, "ladder nesting and mass conservation", 120.0, nesting_and_conservation},
      {9, "intensity identities", 60.0, intensity_identities},
      {10, "bridge argmin uniformity", 60.0, argmin_uniformity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit_seconds;
    const bool pass = outcome.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s [%d] %s: %s (%.2fs, limit %.0fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), seconds, c.limit_seconds, in_time ? "" : ", over time");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 2;
}
