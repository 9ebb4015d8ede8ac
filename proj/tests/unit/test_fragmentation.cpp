#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fragtree/figure.hpp"
#include "fragtree/fragmentation.hpp"

namespace fragtree {
namespace {

using Sizes = std::vector<std::int64_t>;

TEST(Ladder, FigurePath) {
  const std::vector<std::int32_t> path = {0, 1, 1, 0, 0, -1, 2, 2, 3, 2, 1, 0, -1, -2, 0, -1, -2, -3};
  EXPECT_EQ(ladder_components(path), (Sizes{5, 8, 4}));
  EXPECT_EQ(strict_record_epochs(path), (Sizes{5, 13, 17}));
}

TEST(Ladder, FullTreeIsOneComponent) {
  const auto path = prim_path(figure_tree(), figure_weights());
  EXPECT_EQ(ladder_components(path), (Sizes{17}));
}

TEST(Ladder, IsolatedVertices) {
  std::vector<std::int32_t> path(11);
  for (std::int32_t k = 0; k <= 10; ++k) path[static_cast<std::size_t>(k)] = -k;
  EXPECT_EQ(ladder_components(path), Sizes(10, 1));
}

TEST(Ladder, RejectsPathNotEndingAtNewMinimum) {
  EXPECT_THROW(ladder_components(std::vector<std::int32_t>{0, 1, 0}), std::invalid_argument);
  EXPECT_THROW(ladder_components(std::vector<std::int32_t>{0}), std::invalid_argument);
}

TEST(RankedMasses, Examples) {
  const auto m = ranked_masses({5, 8, 4}, 17);
  EXPECT_EQ(m.sizes()[0], 8);
  EXPECT_EQ(m.mass(0), 8.0 / 17.0);
  EXPECT_EQ(m.mass(1), 5.0 / 17.0);
  EXPECT_EQ(m.mass(2), 4.0 / 17.0);
  EXPECT_EQ(m.mass(3), 0.0);
  EXPECT_EQ(ranked_masses({9}, 9).masses(), std::vector<double>{1.0});
  EXPECT_EQ(ranked_masses(Sizes(4, 1), 4).masses(), std::vector<double>(4, 0.25));
  EXPECT_THROW(ranked_masses({5, 8}, 17), std::invalid_argument);
  EXPECT_THROW(ranked_masses({0, 17}, 17), std::invalid_argument);
  EXPECT_EQ(m.count_above(0.25), 2u);
}

TEST(Oracle, Figure) {
  EXPECT_EQ(components_oracle(figure_tree(), figure_weights(), 0.92), (Sizes{8, 5, 4}));
  EXPECT_EQ(components_oracle(figure_tree(), figure_weights(), 1.0), (Sizes{17}));
}

TEST(Oracle, EquivalenceOnRandomInstances) {
  auto rng = make_stream(31337, 0);
  const OffspringLaw laws[] = {OffspringLaw::geometric_half(), OffspringLaw::poisson_one(),
                               OffspringLaw::stable_tail(1.5), OffspringLaw::stable_tail(1.2)};
  for (int i = 0; i < 1000; ++i) {
    const auto& law = laws[i % 4];
    const auto n = static_cast<std::int32_t>(1 + uniform_below(rng, 200));
    const auto tree = sample_conditioned_gw(law, n, rng);
    const auto weights = random_edge_weights(n, rng);
    const double s = uniform01(rng);
    auto ladder = ladder_components(frag_prim_path(tree, weights, s));
    std::sort(ladder.begin(), ladder.end(), std::greater<>{});
    ASSERT_EQ(ladder, components_oracle(tree, weights, s)) << "instance " << i;
  }
}

TEST(Oracle, RefinementAndRecordPersistence) {
  auto rng = make_stream(99, 0);
  const auto law = OffspringLaw::stable_tail(1.5);
  for (int i = 0; i < 100; ++i) {
    const auto tree = sample_conditioned_gw(law, 150, rng);
    const auto weights = random_edge_weights(150, rng);
    const auto order = prim_order(tree, weights);
    const double s_low = uniform01(rng);
    const double s_high = s_low + (1.0 - s_low) * uniform01(rng);
    const auto coarse = component_labels(tree, weights, s_high);
    const auto fine = component_labels(tree, weights, s_low);
    for (Vertex u = 0; u < tree.size(); ++u) {
      for (Vertex v = u + 1; v < tree.size(); ++v) {
        if (fine[static_cast<std::size_t>(u)] == fine[static_cast<std::size_t>(v)]) {
          ASSERT_EQ(coarse[static_cast<std::size_t>(u)], coarse[static_cast<std::size_t>(v)]);
        }
      }
    }
    const auto rec_high = strict_record_epochs(frag_prim_path(tree, weights, order, s_high).values);
    const auto rec_low = strict_record_epochs(frag_prim_path(tree, weights, order, s_low).values);
    ASSERT_TRUE(std::includes(rec_low.begin(), rec_low.end(), rec_high.begin(), rec_high.end()));
  }
}

TEST(Process, Extremes) {
  auto rng = make_stream(8, 0);
  const auto law = OffspringLaw::geometric_half();
  const auto tree = sample_conditioned_gw(law, 400, rng);
  const auto weights = random_edge_weights(400, rng);
  const double b = bn(law, 400);
  const std::vector<double> times = {0.0, 0.5, 1.0, 2.0, 400.0 / b + 1.0};
  const auto traj = fragmentation_process(tree, weights, law, times, 8);
  EXPECT_EQ(traj.n, 400);
  EXPECT_EQ(traj.bn, b);
  EXPECT_EQ(traj.states.front().masses(), std::vector<double>{1.0});
  EXPECT_EQ(traj.states.back().count(), 400u);
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    EXPECT_LE(traj.states[i].largest(), traj.states[i - 1].largest());
    EXPECT_EQ(traj.states[i].total(), 400);
  }
  EXPECT_THROW(fragmentation_process(tree, weights, law, std::vector<double>{1.0, 0.5}),
               std::invalid_argument);
}

TEST(Process, FigureTimeReproducesWorkedExample) {
  const auto tree = figure_tree();
  const auto weights = figure_weights();
  const auto law = OffspringLaw::geometric_half();
  const double b = bn(law, 17);
  const double t = 0.08 * 17.0 / b;
  ASSERT_NEAR(fragmentation_threshold(b, 17, t), 0.92, 1e-12);
  const auto traj = fragmentation_process(tree, weights, law, std::vector<double>{t});
  EXPECT_EQ(traj.states[0].sizes()[0], 8);
  EXPECT_EQ(traj.states[0].sizes()[1], 5);
  EXPECT_EQ(traj.states[0].sizes()[2], 4);
}

}  // namespace
}  // namespace fragtree
