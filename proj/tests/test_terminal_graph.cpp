#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "mgpf/error.hpp"
#include "mgpf/terminal_graph.hpp"

using namespace mgpf;

namespace {

constexpr TerminalPair kAB{0, 1};
constexpr TerminalPair kBC{1, 2};
constexpr TerminalPair kAC{0, 2};

TerminalGraph triangle(double ab, double bc, double ac) {
  TerminalGraph tg(3);
  tg.lower_cost(kAB, ab);
  tg.lower_cost(kBC, bc);
  tg.lower_cost(kAC, ac);
  return tg;
}

double probability_of(const ProbabilityTable& table, TerminalPair e) {
  for (const ProbabilityEntry& entry : table) {
    if (entry.edge == e) return entry.probability;
  }
  return 0.0;
}

// Brute force: all simple paths in the tree via repeated neighbour expansion.
std::vector<TerminalPair> tree_path(const std::vector<TerminalPair>& tree, std::size_t n, std::uint32_t from,
                                    std::uint32_t to) {
  std::vector<std::uint32_t> previous(n, n);
  previous[from] = from;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const TerminalPair& e : tree) {
      if (previous[e.a] != n && previous[e.b] == n) {
        previous[e.b] = e.a;
        changed = true;
      } else if (previous[e.b] != n && previous[e.a] == n) {
        previous[e.a] = e.b;
        changed = true;
      }
    }
  }
  std::vector<TerminalPair> path;
  for (std::uint32_t v = to; v != from; v = previous[v]) path.push_back(TerminalPair::of(v, previous[v]));
  return path;
}

// Prim over finite costs; weight only.
double prim_weight(const TerminalGraph& tg) {
  const std::size_t n = tg.size();
  std::vector<char> in(n, 0);
  std::vector<double> best(n, kInf);
  best[0] = 0.0;
  double total = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in[v] && (pick == n || best[v] < best[pick])) pick = v;
    }
    if (!std::isfinite(best[pick])) return kInf;
    in[pick] = 1;
    total += best[pick];
    for (std::size_t v = 0; v < n; ++v) {
      if (in[v]) continue;
      const TerminalPair e = TerminalPair::of(static_cast<std::uint32_t>(pick), static_cast<std::uint32_t>(v));
      if (tg.is_active(e) || tg.in_tree(e)) best[v] = std::min(best[v], tg.cost(e));
    }
  }
  return total;
}

TerminalGraph random_graph(Rng& rng, std::size_t n, double finite_fraction) {
  TerminalGraph tg(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      const double h = rng.uniform(0.1, 1.0);
      tg.set_lower_bound({a, b}, h);
      if (rng.uniform01() < finite_fraction) tg.lower_cost({a, b}, h + rng.uniform(0.0, 1.0));
    }
  }
  return tg;
}

}  // namespace

TEST(TerminalGraph, Construction) {
  const TerminalGraph tg(std::vector<Config>{{0.0, 0.0}, {0.3, 0.4}, {1.0, 0.0}});
  EXPECT_EQ(tg.size(), 3u);
  EXPECT_EQ(tg.pair_count(), 3u);
  EXPECT_NEAR(tg.lower_bound({0, 1}), 0.5, 1e-15);
  EXPECT_EQ(tg.cost({1, 2}), kInf);
  EXPECT_EQ(tg.active_count(), 3u);
  EXPECT_FALSE(tg.tree_spans());
  EXPECT_EQ(tg.tree_weight(), kInf);
  EXPECT_THROW(TerminalGraph(std::size_t{1}), Error);
}

TEST(TerminalGraph, LowerCostOnlyDecreases) {
  TerminalGraph tg(3);
  EXPECT_TRUE(tg.lower_cost(kAB, 2.0));
  EXPECT_FALSE(tg.lower_cost(kAB, 2.0));
  EXPECT_FALSE(tg.lower_cost(kAB, 3.0));
  EXPECT_TRUE(tg.lower_cost(TerminalPair::of(1, 0), 1.0));
  EXPECT_EQ(tg.cost(kAB), 1.0);
}

TEST(CycleMax, TwoEdgePath) {
  TerminalGraph tg = triangle(1.0, 2.0, 4.0);
  tg.set_tree({kAB, kBC});
  const CycleMax m = cycle_max_edge(tg, kAC);
  EXPECT_EQ(m.edge, kBC);
  EXPECT_EQ(m.cost, 2.0);
  EXPECT_EQ(m.path_cost, 3.0);
}

TEST(CycleMax, StarLeafPair) {
  TerminalGraph tg(5);
  const double spokes[] = {0.0, 1.5, 0.7, 2.5, 0.2};
  std::vector<TerminalPair> tree;
  for (std::uint32_t leaf = 1; leaf < 5; ++leaf) {
    tg.lower_cost({0, leaf}, spokes[leaf]);
    tree.push_back({0, leaf});
  }
  tg.set_tree(tree);
  const CycleMax m = cycle_max_edge(tg, {2, 3});
  EXPECT_EQ(m.cost, 2.5);
  EXPECT_EQ(m.edge, (TerminalPair{0, 3}));
}

TEST(CycleMax, NeedsSpanningTree) {
  TerminalGraph tg = triangle(1.0, 2.0, 4.0);
  try {
    (void)cycle_max_edge(tg, kAC);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSpanning);
  }
}

TEST(CycleMax, MatchesBruteForceOnRandomTrees) {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    TerminalGraph tg(8);
    std::vector<TerminalPair> tree;
    for (std::uint32_t v = 1; v < 8; ++v) {
      const auto u = static_cast<std::uint32_t>(rng.uniform01() * v);
      tree.push_back(TerminalPair::of(u, v));
      tg.lower_cost(tree.back(), std::round(rng.uniform(1.0, 6.0)));
    }
    tg.set_tree(tree);
    for (std::uint32_t a = 0; a < 8; ++a) {
      for (std::uint32_t b = a + 1; b < 8; ++b) {
        if (tg.in_tree({a, b})) continue;
        const auto path = tree_path(tree, 8, a, b);
        double max_cost = -1.0;
        TerminalPair max_edge{};
        double sum = 0.0;
        for (const TerminalPair& e : path) {
          sum += tg.cost(e);
          if (tg.cost(e) > max_cost || (tg.cost(e) == max_cost && e < max_edge)) {
            max_cost = tg.cost(e);
            max_edge = e;
          }
        }
        const CycleMax m = cycle_max_edge(tg, {a, b});
        EXPECT_EQ(m.cost, max_cost);
        EXPECT_EQ(m.edge, max_edge);
        EXPECT_NEAR(m.path_cost, sum, 1e-12);
        EXPECT_EQ(m.path.size(), path.size());
      }
    }
  }
}

TEST(UpdateTree, KruskalOnEmptyTree) {
  TerminalGraph tg = triangle(1.0, 2.0, 4.0);
  update_tree(tg);
  EXPECT_EQ(tg.tree(), (std::vector<TerminalPair>{kAB, kBC}));
  EXPECT_EQ(tg.tree_weight(), 3.0);
}

TEST(UpdateTree, DisconnectedStaysEmpty) {
  TerminalGraph tg(4);
  tg.lower_cost({0, 1}, 1.0);
  tg.lower_cost({2, 3}, 1.0);
  update_tree(tg);
  EXPECT_TRUE(tg.tree().empty());
}

TEST(UpdateTree, SwapOnCheaperEdge) {
  TerminalGraph tg = triangle(1.0, 2.0, 4.0);
  update_tree(tg);
  tg.lower_cost(kAC, 1.5);
  update_tree(tg);
  EXPECT_EQ(tg.tree(), (std::vector<TerminalPair>{kAB, kAC}));
  EXPECT_EQ(tg.tree_weight(), 2.5);
}

TEST(UpdateTree, CapsNonTreeCostAtPathCost) {
  TerminalGraph tg = triangle(1.0, 1.0, 5.0);
  update_tree(tg);
  update_tree(tg);
  EXPECT_EQ(tg.cost(kAC), 2.0);
  EXPECT_EQ(tg.tree(), (std::vector<TerminalPair>{kAB, kBC}));
}

TEST(UpdateTree, InfiniteNonTreeEdgeCapped) {
  TerminalGraph tg(3);
  tg.lower_cost(kAB, 1.0);
  tg.lower_cost(kBC, 1.0);
  update_tree(tg);
  update_tree(tg);
  EXPECT_EQ(tg.cost(kAC), 2.0);
}

TEST(UpdateTree, MatchesKruskalOnRandomGraphs) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    TerminalGraph tg = random_graph(rng, 6, 0.8);
    update_tree(tg);
    for (int round = 0; round < 5; ++round) {
      const double before = tg.tree_weight();
      for (std::uint32_t a = 0; a < 6; ++a) {
        for (std::uint32_t b = a + 1; b < 6; ++b) {
          if (rng.uniform01() < 0.3) tg.lower_cost({a, b}, tg.lower_bound({a, b}) + rng.uniform(0.0, 1.0));
        }
      }
      update_tree(tg);
      if (!tg.tree_spans()) continue;
      EXPECT_NEAR(tg.tree_weight(), prim_weight(tg), 1e-9);
      if (std::isfinite(before)) EXPECT_LE(tg.tree_weight(), before);
    }
  }
}

TEST(PruneEdges, Examples) {
  TerminalGraph tg = triangle(1.0, 2.0, 4.0);
  EXPECT_TRUE(prune_edges(tg).empty());  // no tree yet
  update_tree(tg);
  tg.set_lower_bound(kAC, 1.5);
  EXPECT_TRUE(prune_edges(tg).empty());
  EXPECT_TRUE(tg.is_active(kAC));
  tg.set_lower_bound(kAC, 3.0);
  EXPECT_EQ(prune_edges(tg), (std::vector<TerminalPair>{kAC}));
  EXPECT_FALSE(tg.is_active(kAC));
  EXPECT_EQ(tg.pruned_count(), 1u);
  EXPECT_TRUE(prune_edges(tg).empty());
}

TEST(PruneEdges, NeverTouchesTreeEdges) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    TerminalGraph tg = random_graph(rng, 7, 1.0);
    update_tree(tg);
    const auto removed = prune_edges(tg);
    for (const TerminalPair& e : removed) {
      EXPECT_FALSE(tg.in_tree(e));
      EXPECT_GT(tg.lower_bound(e), cycle_max_edge(tg, e).cost);
    }
    EXPECT_EQ(tg.active_count() + removed.size(), tg.pair_count());
  }
}

TEST(Probability, LowerBoundPrior) {
  const TerminalGraph tg(std::vector<Config>{{0.0, 0.0}, {0.3, 0.4}, {1.0, 0.0}});
  const ProbabilityTable prior = lower_bound_probability(tg);
  ASSERT_EQ(prior.size(), 3u);
  const double total = 0.5 + 1.0 + std::hypot(0.7, 0.4);
  EXPECT_NEAR(probability_of(prior, {0, 1}), 0.5 / total, 1e-15);
  EXPECT_NEAR(probability_of(prior, {0, 2}), 1.0 / total, 1e-15);
}

TEST(Probability, PriorKeptWithoutTree) {
  TerminalGraph tg(std::vector<Config>{{0.0, 0.0}, {0.3, 0.4}, {1.0, 0.0}});
  const ProbabilityTable prior = lower_bound_probability(tg);
  const ProbabilityTable next = update_probability(tg, prior);
  ASSERT_EQ(next.size(), prior.size());
  for (std::size_t i = 0; i < prior.size(); ++i) EXPECT_EQ(next[i].probability, prior[i].probability);
}

TEST(Probability, TreeGapsOnly) {
  // Tree ab, bc with gaps 1 and 3; ac pruned so no non-tree candidates.
  TerminalGraph tg = triangle(2.0, 4.0, 9.0);
  tg.set_lower_bound(kAB, 1.0);
  tg.set_lower_bound(kBC, 1.0);
  tg.set_lower_bound(kAC, 8.0);
  update_tree(tg);
  prune_edges(tg);
  ASSERT_FALSE(tg.is_active(kAC));
  const ProbabilityTable table = update_probability(tg, {});
  EXPECT_NEAR(probability_of(table, kAB), 0.25, 1e-15);
  EXPECT_NEAR(probability_of(table, kBC), 0.75, 1e-15);
  EXPECT_EQ(probability_of(table, kAC), 0.0);
}

TEST(Probability, OneOfEach) {
  // Tree ab (gap 2) and bc (gap 0); non-tree ac costs 5 against cycle max 3 (gap 2).
  TerminalGraph tg = triangle(3.0, 2.0, 5.0);
  tg.set_lower_bound(kAB, 1.0);
  tg.set_lower_bound(kBC, 2.0);
  tg.set_lower_bound(kAC, 1.0);
  tg.set_tree({kAB, kBC});
  const ProbabilityTable table = update_probability(tg, {});
  EXPECT_NEAR(probability_of(table, kAB), 0.5, 1e-15);
  EXPECT_NEAR(probability_of(table, kAC), 0.5, 1e-15);
  EXPECT_EQ(probability_of(table, kBC), 0.0);
}

TEST(Probability, ConvergedIsUniformOverActive) {
  TerminalGraph tg = triangle(1.0, 1.0, 1.0);
  tg.set_lower_bound(kAB, 1.0);
  tg.set_lower_bound(kBC, 1.0);
  tg.set_lower_bound(kAC, 1.0);
  update_tree(tg);
  const ProbabilityTable table = update_probability(tg, {});
  ASSERT_EQ(table.size(), 3u);
  for (const ProbabilityEntry& entry : table) EXPECT_NEAR(entry.probability, 1.0 / 3.0, 1e-15);
}

TEST(Probability, NormalizedAndMatchesFormula) {
  Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    TerminalGraph tg = random_graph(rng, 7, 0.9);
    update_tree(tg);
    update_tree(tg);
    if (!tg.tree_spans()) continue;
    prune_edges(tg);
    const ProbabilityTable table = update_probability(tg, {});
    const double total = std::accumulate(table.begin(), table.end(), 0.0,
                                         [](double s, const ProbabilityEntry& e) { return s + e.probability; });
    ASSERT_FALSE(table.empty());
    EXPECT_NEAR(total, 1.0, 1e-9);

    std::map<TerminalPair, double> gap1, gap2;
    for (const TerminalPair& e : tg.active_pairs()) {
      if (tg.in_tree(e)) {
        const double g = tg.cost(e) - tg.lower_bound(e);
        if (g > 0) gap1[e] = g;
      } else {
        const double g = tg.cost(e) - cycle_max_edge(tg, e).cost;
        if (g > 0) gap2[e] = g;
      }
    }
    const double parts = static_cast<double>(gap1.size() + gap2.size());
    if (parts == 0) continue;
    double s1 = 0, s2 = 0;
    for (auto& [e, g] : gap1) s1 += g;
    for (auto& [e, g] : gap2) s2 += g;
    for (const ProbabilityEntry& entry : table) {
      double want = 0.0;
      if (gap1.count(entry.edge)) want = gap1.size() / parts * gap1[entry.edge] / s1;
      if (gap2.count(entry.edge)) want = gap2.size() / parts * gap2[entry.edge] / s2;
      EXPECT_NEAR(entry.probability, want, 1e-12);
      EXPECT_TRUE(tg.is_active(entry.edge));
    }
  }
}

class ScanOrder : public ::testing::TestWithParam<int> {};

TEST_P(ScanOrder, WeightIndependentOfPermutation) {
  Rng rng(1000 + GetParam());
  TerminalGraph base = random_graph(rng, 8, 0.7);
  update_tree(base);
  if (!base.tree_spans()) GTEST_SKIP() << "random graph disconnected";
  for (std::uint32_t a = 0; a < 8; ++a) {
    for (std::uint32_t b = a + 1; b < 8; ++b) {
      if (rng.uniform01() < 0.5) base.lower_cost({a, b}, base.lower_bound({a, b}) + rng.uniform(0.0, 0.5));
    }
  }
  std::vector<TerminalPair> pairs = base.active_pairs();
  TerminalGraph reference = base;
  update_tree(reference);
  for (int perm = 0; perm < 10; ++perm) {
    std::shuffle(pairs.begin(), pairs.end(), rng.engine());
    TerminalGraph tg = base;
    update_tree(tg, pairs);
    EXPECT_NEAR(tg.tree_weight(), reference.tree_weight(), 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Graphs, ScanOrder, ::testing::Range(0, 20));
