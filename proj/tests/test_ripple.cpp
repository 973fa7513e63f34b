#include <gtest/gtest.h>

#include <cmath>

#include "mgpf/informed_sampling.hpp"
#include "mgpf/ripple.hpp"

using namespace mgpf;

namespace {

struct Scene {
  Roadmap rm;
  Forest forest;
  TerminalGraph tg;

  Scene(Env env, const std::vector<Config>& terminals, double eta) : rm(std::move(env), eta), tg(terminals) {
    for (const Config& t : terminals) rm.add_node(t);
    rm.set_num_terminals(terminals.size());
    initialize_forest(rm, forest, tg);
  }
};

// eta giving radius `rho` at node count q in the empty unit square.
double eta_for(double rho, std::size_t q) { return rho / connection_radius(q, {1.0, 1.0, 2}); }

void expect_forest_shape(const Roadmap& rm, const Forest& forest) {
  for (NodeId u = 0; u < rm.size(); ++u) {
    if (u < rm.num_terminals() || forest.root[u] == kNoNode) continue;
    const NodeId p = forest.parent[u];
    EXPECT_EQ(forest.root[u], forest.root[p]);
    // Parent chains end at the root in at most |V| steps.
    NodeId v = u;
    std::size_t steps = 0;
    while (forest.parent[v] != v && steps <= rm.size()) {
      v = forest.parent[v];
      ++steps;
    }
    EXPECT_EQ(v, forest.root[u]);
  }
}

}  // namespace

TEST(Ripple, SingleAttachment) {
  Scene scene(Env::boxes(2, {}), {{0.0, 0.0}, {1.0, 1.0}}, eta_for(0.6, 3));
  const std::vector<Config> batch{{0.3, 0.0}};
  ripple(scene.rm, scene.forest, scene.tg, batch);
  EXPECT_DOUBLE_EQ(scene.forest.g[2], 0.3);
  EXPECT_EQ(scene.forest.root[2], 0u);
  EXPECT_EQ(scene.forest.parent[2], 0u);
  EXPECT_TRUE(verify_forest(scene.rm, scene.forest));
}

TEST(Ripple, MeetBetweenTwoTerminals) {
  Scene scene(Env::boxes(2, {}), {{0.0, 0.0}, {1.0, 0.0}}, eta_for(0.6, 3));
  ASSERT_TRUE(scene.rm.neighbors(0).empty());
  const std::vector<Config> batch{{0.5, 0.0}};
  const auto meets = ripple(scene.rm, scene.forest, scene.tg, batch);
  EXPECT_DOUBLE_EQ(scene.forest.g[2], 0.5);
  EXPECT_DOUBLE_EQ(scene.tg.cost({0, 1}), 1.0);
  ASSERT_EQ(meets.size(), 1u);
  EXPECT_DOUBLE_EQ(meets[0].cost, 1.0);
  EXPECT_NE(scene.forest.root[meets[0].via_from], scene.forest.root[meets[0].via_to]);
  EXPECT_EQ(scene.tg.realization({0, 1}), (std::vector<NodeId>{0, 2, 1}));
}

TEST(Ripple, RewiresOntoShortcut) {
  // Radius 0.49 when a is inserted keeps the direct t-a edge (length 0.5) out,
  // so a first hangs off the detour through w. Far terminals only raise the node count.
  const std::vector<Config> terminals{{0.0, 0.0}, {1.0, 1.0}, {1.0, 0.7}, {0.7, 1.0},
                                      {1.0, 0.0}, {0.0, 1.0}, {1.0, 0.4}};
  Scene scene(Env::boxes(2, {}), terminals, eta_for(0.49, 9));
  const std::vector<Config> detour{{0.0, 0.45}, {0.4, 0.3}};
  ripple(scene.rm, scene.forest, scene.tg, detour);
  const NodeId w = 7;
  const NodeId a = 8;
  EXPECT_EQ(scene.forest.parent[a], w);
  EXPECT_NEAR(scene.forest.g[a], 0.45 + std::sqrt(0.16 + 0.0225), 1e-12);

  const std::vector<Config> shortcut{{0.2, 0.15}};
  ripple(scene.rm, scene.forest, scene.tg, shortcut);
  const NodeId s = 9;
  EXPECT_NEAR(scene.forest.g[s], 0.25, 1e-12);
  EXPECT_NEAR(scene.forest.g[a], 0.5, 1e-12);
  EXPECT_EQ(scene.forest.parent[a], s);
  EXPECT_TRUE(verify_forest(scene.rm, scene.forest));
}

TEST(Ripple, DirectTerminalEdgeSeeded) {
  Scene scene(Env::boxes(2, {}), {{0.1, 0.1}, {0.2, 0.1}}, 1.1);
  ASSERT_FALSE(scene.rm.neighbors(0).empty());
  EXPECT_NEAR(scene.tg.cost({0, 1}), 0.1, 1e-15);
}

TEST(VerifyForest, TerminalsOnly) {
  Scene scene(Env::center_obstacle(2), {{0.01, 0.01}, {0.99, 0.99}}, 1.1);
  EXPECT_TRUE(verify_forest(scene.rm, scene.forest));
}

TEST(VerifyForest, DetectsCorruption) {
  const Env env = Env::center_obstacle(2);
  Scene scene(env, {{0.01, 0.01}, {0.99, 0.99}, {0.01, 0.99}}, 1.1);
  Rng rng(3);
  std::vector<Config> batch;
  for (int i = 0; i < 300; ++i) batch.push_back(sample_uniform_free(env, rng));
  ripple(scene.rm, scene.forest, scene.tg, batch);
  ASSERT_TRUE(verify_forest(scene.rm, scene.forest));
  for (NodeId u = 3; u < scene.rm.size(); ++u) {
    if (scene.forest.root[u] == kNoNode) continue;
    Forest broken = scene.forest;
    broken.g[u] += 0.1;
    EXPECT_FALSE(verify_forest(scene.rm, broken));
    break;
  }
}

class RippleRandom : public ::testing::TestWithParam<int> {};

TEST_P(RippleRandom, InvariantsAcrossBatches) {
  const int seed = GetParam();
  Rng rng(seed);
  const Env env = seed % 2 ? Env::center_obstacle(2) : Env::uniform_hypercubes(2);
  std::vector<Config> terminals;
  for (int i = 0; i < 3 + seed % 3; ++i) terminals.push_back(sample_uniform_free(env, rng));
  Scene scene(env, terminals, 1.1);

  for (int batch_index = 0; batch_index < 5; ++batch_index) {
    std::vector<double> before;
    for (NodeId a = 0; a < terminals.size(); ++a) {
      for (NodeId b = a + 1; b < terminals.size(); ++b) before.push_back(scene.tg.cost({a, b}));
    }
    std::vector<Config> batch;
    for (int i = 0; i < 100; ++i) batch.push_back(sample_uniform_free(env, rng));
    const auto meets = ripple(scene.rm, scene.forest, scene.tg, batch);
    ASSERT_TRUE(verify_forest(scene.rm, scene.forest));
    expect_forest_shape(scene.rm, scene.forest);

    std::size_t k = 0;
    for (NodeId a = 0; a < terminals.size(); ++a) {
      for (NodeId b = a + 1; b < terminals.size(); ++b) {
        const TerminalPair e{a, b};
        EXPECT_LE(scene.tg.cost(e), before[k++]);
        if (std::isfinite(scene.tg.cost(e))) EXPECT_GE(scene.tg.cost(e), scene.tg.lower_bound(e) - 1e-12);
      }
    }
    for (const MeetRecord& m : meets) EXPECT_NE(m.terminal_a, m.terminal_b);
  }

  // Every cross-root roadmap edge is witnessed in cost_T.
  for (NodeId u = 0; u < scene.rm.size(); ++u) {
    if (scene.forest.root[u] == kNoNode) continue;
    for (const Edge& e : scene.rm.neighbors(u)) {
      const NodeId ru = scene.forest.root[u];
      const NodeId rv = scene.forest.root[e.to];
      if (rv == kNoNode || rv == ru) continue;
      EXPECT_LE(scene.tg.cost(TerminalPair::of(ru, rv)), scene.forest.g[u] + e.cost + scene.forest.g[e.to] + 1e-9);
    }
  }

  // Stored realizations are roadmap walks whose length is cost_T.
  for (NodeId a = 0; a < terminals.size(); ++a) {
    for (NodeId b = a + 1; b < terminals.size(); ++b) {
      const auto& path = scene.tg.realization({a, b});
      if (path.empty()) continue;
      EXPECT_EQ(path.front(), a);
      EXPECT_EQ(path.back(), b);
      double length = 0.0;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const auto adj = scene.rm.neighbors(path[i]);
        const auto it = std::find_if(adj.begin(), adj.end(), [&](const Edge& e) { return e.to == path[i + 1]; });
        ASSERT_NE(it, adj.end());
        length += it->cost;
      }
      EXPECT_NEAR(length, scene.tg.cost({a, b}), 1e-9);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RippleRandom, ::testing::Range(0, 12));
