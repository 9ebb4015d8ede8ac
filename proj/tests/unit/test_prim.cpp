#include <gtest/gtest.h>

#include <algorithm>

#include "forest_exploration.hpp"
#include "fragtree/figure.hpp"
#include "fragtree/fragmentation.hpp"
#include "fragtree/prim.hpp"

namespace fragtree {
namespace {

using Path = std::vector<std::int32_t>;

TEST(PrimOrder, SingleRoot) {
  const auto tree = PlaneTree::from_child_counts({0});
  const auto weights = EdgeWeights::from_values({0.0});
  EXPECT_EQ(prim_order(tree, weights).order, (std::vector<Vertex>{0}));
  EXPECT_EQ(prim_path(tree, weights).values, (Path{0, -1}));
}

TEST(PrimOrder, FigureTree) {
  const auto order = prim_order(figure_tree(), figure_weights());
  EXPECT_EQ(order.order,
            (std::vector<Vertex>{0, 1, 2, 7, 8, 9, 11, 12, 14, 16, 13, 15, 10, 3, 5, 6, 4}));
  for (std::size_t k = 0; k < order.order.size(); ++k) {
    EXPECT_EQ(order.rank[static_cast<std::size_t>(order.order[k])], static_cast<std::int32_t>(k));
  }
}

TEST(PrimOrder, Star) {
  const auto tree = PlaneTree::from_child_counts({3, 0, 0, 0});
  const auto weights = EdgeWeights::from_values({0.0, 0.3, 0.1, 0.2});
  EXPECT_EQ(prim_order(tree, weights).order, (std::vector<Vertex>{0, 2, 3, 1}));
}

TEST(PrimPath, Figure) {
  EXPECT_EQ(prim_path(figure_tree(), figure_weights()).values,
            (Path{0, 2, 3, 2, 2, 1, 4, 4, 5, 4, 3, 2, 1, 0, 2, 1, 0, -1}));
}

TEST(FragPrimPath, FigureAtNinetyTwo) {
  const auto path = frag_prim_path(figure_tree(), figure_weights(), 0.92);
  EXPECT_EQ(path.values, (Path{0, 1, 1, 0, 0, -1, 2, 2, 3, 2, 1, 0, -1, -2, 0, -1, -2, -3}));
  EXPECT_EQ(path.threshold, 0.92);
}

TEST(FragPrimPath, Extremes) {
  const auto tree = figure_tree();
  const auto weights = figure_weights();
  EXPECT_EQ(frag_prim_path(tree, weights, 1.0).values, prim_path(tree, weights).values);
  const auto isolated = frag_prim_path(tree, weights, 0.0).values;
  for (std::size_t k = 0; k < isolated.size(); ++k) EXPECT_EQ(isolated[k], -static_cast<std::int32_t>(k));
  EXPECT_THROW(frag_prim_path(tree, weights, 1.5), std::invalid_argument);
  EXPECT_THROW(frag_prim_path(tree, weights, -0.1), std::invalid_argument);
}

TEST(EdgeWeights, Validation) {
  EXPECT_THROW(EdgeWeights::from_values({0.0, 0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(EdgeWeights::from_values({0.0, 1.5}), std::invalid_argument);
  EXPECT_THROW(EdgeWeights::from_values({}), std::invalid_argument);
  const auto tree = PlaneTree::from_child_counts({2, 0, 0});
  EXPECT_THROW(prim_order(tree, EdgeWeights::from_values({0.0, 0.5})), std::invalid_argument);
}

TEST(ModifiedWalk, Examples) {
  const std::vector<std::int32_t> xi = {2, -1};
  const std::vector<std::vector<double>> u = {{0.3, 0.8, 0.1}, {}};
  const auto walk = modified_walk(xi, u, 0.5);
  EXPECT_EQ(walk.thinned, (Path{2, 0}));
  EXPECT_EQ(walk.path, (Path{0, 1, 0}));
  EXPECT_EQ(modified_walk(xi, u, 1.0).path, (Path{0, 2, 1}));
  EXPECT_EQ(modified_walk(xi, u, 0.0).path, (Path{0, -1, -2}));
  EXPECT_THROW(modified_walk(xi, {{0.3, 0.8}, {}}, 0.5), std::invalid_argument);
  EXPECT_THROW(modified_walk(xi, {{0.3, 0.8, 0.1}}, 0.5), std::invalid_argument);
}

TEST(ModifiedWalk, MonotoneInT) {
  auto rng = make_stream(11, 0);
  std::vector<std::int32_t> xi(50);
  std::vector<std::vector<double>> u(50);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    xi[i] = static_cast<std::int32_t>(uniform_below(rng, 4)) - 1;
    u[i].resize(static_cast<std::size_t>(xi[i] + 1));
    for (auto& x : u[i]) x = uniform01(rng);
  }
  auto previous = modified_walk(xi, u, 0.0).thinned;
  for (double t = 0.05; t <= 1.0; t += 0.05) {
    const auto current = modified_walk(xi, u, t).thinned;
    for (std::size_t i = 0; i < current.size(); ++i) EXPECT_LE(previous[i], current[i]);
    previous = current;
  }
}

class RandomTrees : public ::testing::Test {
 protected:
  void for_each_sample(int count, std::int32_t max_n, auto check) {
    auto rng = make_stream(4242, 0);
    const OffspringLaw laws[] = {OffspringLaw::geometric_half(), OffspringLaw::poisson_one(),
                                 OffspringLaw::stable_tail(1.5)};
    for (int i = 0; i < count; ++i) {
      const auto& law = laws[i % 3];
      const auto n = static_cast<std::int32_t>(1 + uniform_below(rng, static_cast<std::uint64_t>(max_n)));
      const auto tree = sample_conditioned_gw(law, n, rng);
      const auto weights = random_edge_weights(n, rng);
      check(tree, weights, rng);
    }
  }
};

TEST_F(RandomTrees, PrefixConnectivity) {
  for_each_sample(300, 200, [](const PlaneTree& tree, const EdgeWeights& w, Rng&) {
    const auto order = prim_order(tree, w);
    ASSERT_EQ(order.order.front(), 0);
    for (std::size_t k = 1; k < order.order.size(); ++k) {
      const auto parent = tree.parent(order.order[k]);
      ASSERT_LT(order.rank[static_cast<std::size_t>(parent)], static_cast<std::int32_t>(k));
    }
  });
}

TEST_F(RandomTrees, IncrementMultisetMatchesLukasiewicz) {
  for_each_sample(300, 200, [](const PlaneTree& tree, const EdgeWeights& w, Rng&) {
    const auto a = prim_path(tree, w).values;
    const auto b = lukasiewicz_of(tree).values;
    std::vector<std::int32_t> da, db;
    for (std::size_t k = 1; k < a.size(); ++k) {
      da.push_back(a[k] - a[k - 1]);
      db.push_back(b[k] - b[k - 1]);
    }
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    ASSERT_EQ(da, db);
    ASSERT_TRUE(is_lukasiewicz_excursion(a));
  });
}

TEST_F(RandomTrees, MonotoneInThreshold) {
  for_each_sample(200, 200, [](const PlaneTree& tree, const EdgeWeights& w, Rng& rng) {
    const auto order = prim_order(tree, w);
    const double s1 = uniform01(rng);
    const double s2 = s1 + (1.0 - s1) * uniform01(rng);
    const auto low = frag_prim_path(tree, w, order, s1).values;
    const auto high = frag_prim_path(tree, w, order, s2).values;
    for (std::size_t k = 0; k < low.size(); ++k) ASSERT_LE(low[k], high[k]);
  });
}

TEST_F(RandomTrees, AgreesWithLiteralForestExploration) {
  for_each_sample(300, 50, [](const PlaneTree& tree, const EdgeWeights& w, Rng& rng) {
    const double s = uniform01(rng);
    const auto reference = reference::literal_forest_exploration(tree, w, s);
    ASSERT_EQ(reference::literal_prim_order(tree, w), prim_order(tree, w).order);
    ASSERT_EQ(reference.order, prim_order(tree, w).order);
    const auto path = frag_prim_path(tree, w, s);
    ASSERT_EQ(reference.w, path.values);
    ASSERT_EQ(reference.sizes, ladder_components(path));
  });
}

TEST(LiteralExploration, FigureZeros) {
  const auto ref = reference::literal_forest_exploration(figure_tree(), figure_weights(), 0.92);
  EXPECT_EQ(ref.z, (Path{0, 2, 2, 1, 1, 0, 4, 4, 5, 4, 3, 2, 1, 0, 3, 2, 1, 0, 0}));
  EXPECT_EQ(ref.sizes, (std::vector<std::int64_t>{5, 8, 4}));
}

}  // namespace
}  // namespace fragtree
