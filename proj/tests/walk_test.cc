#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "rwc/estimator.hpp"
#include "rwc/exact.hpp"
#include "rwc/walk.hpp"

namespace rwc {
namespace {

// Two disjoint communities of `size` nodes each, every member following
// node 0 of its community (the hub) plus a ring inside the community.
std::pair<DirectedGraph, PartitionLabeling> disjoint_communities(std::size_t size) {
  DirectedGraph g(2 * size);
  PartitionLabeling l(2 * size, Side::X);
  for (std::size_t base : {std::size_t{0}, size}) {
    for (std::size_t i = 0; i < size; ++i) {
      const auto v = static_cast<NodeId>(base + i);
      if (base == size) l.set(v, Side::Y);
      if (i != 0) g.add_edge(v, static_cast<NodeId>(base));
      g.add_edge(v, static_cast<NodeId>(base + (i + 1) % size));
    }
  }
  return {g, l};
}

TEST(SelectHubsTest, StarCenter) {
  DirectedGraph g(12);
  PartitionLabeling l(12, Side::X);
  l.set(10, Side::Y);
  l.set(11, Side::Y);
  for (NodeId v = 1; v < 10; ++v) g.add_edge(v, 0);
  g.add_edge(10, 11);
  const auto hubs = select_hubs(g, l, 1);
  ASSERT_EQ(hubs.x.size(), 1u);
  EXPECT_EQ(hubs.x[0], 0u);
  EXPECT_EQ(g.in_degree(0), 9u);
  EXPECT_EQ(hubs.y, std::vector<NodeId>{11});
}

TEST(SelectHubsTest, TiesGoToLowerId) {
  DirectedGraph g(14);
  PartitionLabeling l(14, Side::X);
  l.set(13, Side::Y);
  for (NodeId v = 7; v < 12; ++v) {
    g.add_edge(v, 5);
    g.add_edge(v, 3);
  }
  const auto hubs = select_hubs(g, l, 1);
  EXPECT_EQ(hubs.x, std::vector<NodeId>{3});
}

TEST(SelectHubsTest, UnassignedNodesAreNeverHubs) {
  // 10-node graph; the added celebrity has the largest in-degree of all.
  auto [g, l] = testing::two_block(5, 0.4, 0.1, 4);
  std::vector<NodeId> all(10);
  std::iota(all.begin(), all.end(), 0);
  const auto aug = add_candidate(g, l, make_candidate(g, l, 10, "celebrity", all));
  for (NodeId v = 0; v < 10; ++v) ASSERT_LT(aug.graph.in_degree(v), aug.graph.in_degree(aug.added));
  const auto hubs = select_hubs(aug.graph, aug.labeling, 3);
  for (NodeId h : hubs.x) EXPECT_NE(h, aug.added);
  for (NodeId h : hubs.y) EXPECT_NE(h, aug.added);
}

TEST(SelectHubsTest, SizeIsMinOfKAndSide) {
  auto [g, l] = testing::two_block(4, 0.5, 0.1, 5);
  const auto hubs = select_hubs(g, l, 10);
  EXPECT_EQ(hubs.x.size(), 4u);
  EXPECT_EQ(hubs.y.size(), 4u);
}

TEST(SelectHubsTest, PropertyHubsDominateNonHubs) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    auto [g, l] = testing::two_block(12, 0.3, 0.05, rng());
    const std::size_t k = 1 + rng() % 5;
    const auto hubs = select_hubs(g, l, k);
    for (const auto& [side, set] : {std::pair{Side::X, hubs.x}, std::pair{Side::Y, hubs.y}}) {
      EXPECT_EQ(set.size(), std::min(k, l.count(side)));
      for (NodeId h : set) {
        EXPECT_EQ(l[h], side);
        for (NodeId v : l.members(side)) {
          if (std::find(set.begin(), set.end(), v) != set.end()) continue;
          EXPECT_TRUE(g.in_degree(h) > g.in_degree(v) || (g.in_degree(h) == g.in_degree(v) && h < v));
        }
      }
    }
  }
}

TEST(SelectHubsTest, EmptySideIsDegenerate) {
  DirectedGraph g(3);
  PartitionLabeling l(3, Side::X);
  EXPECT_THROW(select_hubs(g, l, 1), DegeneratePartitionError);
}

TEST(RunWalkTest, StartAtHubEndsImmediately) {
  auto [g, l] = disjoint_communities(5);
  const auto hubs = select_hubs(g, l, 1);
  WalkConfig cfg;
  cfg.max_steps = 1;
  EXPECT_EQ(run_walk(g, l, hubs, hubs.x[0], cfg, 1), WalkOutcome::EndedInX);
  EXPECT_EQ(run_walk(g, l, hubs, hubs.y[0], cfg, 1), WalkOutcome::EndedInY);
}

TEST(RunWalkTest, IsolatedStartIsDiscarded) {
  DirectedGraph g(4);
  PartitionLabeling l({Side::X, Side::X, Side::Y, Side::Y});
  g.add_edge(1, 0);
  g.add_edge(3, 2);
  const auto hubs = select_hubs(g, l, 1);
  g.add_node("loner");
  l.push_back(Side::X);
  EXPECT_EQ(run_walk(g, l, hubs, 4, WalkConfig{}, 3), WalkOutcome::Discarded);
}

TEST(RunWalkTest, DirectedOutDeadEnd) {
  // 1 -> 0, 0 -> 2, 1 -> 2, 1 -> 3. Hubs: X = 0, Y = 2. Node 3 (X) has
  // only an in-edge, so a directed walk from it is stuck while a
  // symmetrized walk can step back to 1.
  DirectedGraph g(4);
  PartitionLabeling l({Side::X, Side::X, Side::Y, Side::X});
  g.add_edge(1, 0);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  const auto hubs = select_hubs(g, l, 1);
  ASSERT_EQ(hubs.x, std::vector<NodeId>{0});
  ASSERT_EQ(hubs.y, std::vector<NodeId>{2});
  WalkConfig cfg;
  cfg.edge_mode = EdgeMode::directed_out;
  EXPECT_EQ(run_walk(g, l, hubs, 3, cfg, 1), WalkOutcome::Discarded);
  cfg.edge_mode = EdgeMode::symmetrized;
  EXPECT_NE(run_walk(g, l, hubs, 3, cfg, 1), WalkOutcome::Discarded);
}

TEST(RunWalkTest, DisjointCliquesNeverCross) {
  auto [g, l] = disjoint_communities(8);
  const auto hubs = select_hubs(g, l, 1);
  for (std::uint64_t s = 0; s < 200; ++s) EXPECT_EQ(run_walk(g, l, hubs, 3, WalkConfig{}, s), WalkOutcome::EndedInX);
}

TEST(RunWalkTest, StepLimitDiscards) {
  // path 0 - 1 - 2 - ... - 9 with hubs only at the ends: from the middle a
  // walk cannot finish in 2 steps
  DirectedGraph g(10);
  PartitionLabeling l(10, Side::X);
  for (NodeId v = 5; v < 10; ++v) l.set(v, Side::Y);
  for (NodeId v = 1; v < 5; ++v) g.add_edge(v, v - 1);
  for (NodeId v = 5; v < 9; ++v) g.add_edge(v, v + 1);
  g.add_edge(4, 5);
  const auto hubs = select_hubs(g, l, 1);
  ASSERT_EQ(hubs.x[0], 0u);
  WalkConfig cfg;
  cfg.max_steps = 2;
  EXPECT_EQ(run_walk(g, l, hubs, 4, cfg, 1), WalkOutcome::Discarded);
}

TEST(EstimateRwcTest, DisjointCommunitiesScoreOne) {
  auto [g, l] = disjoint_communities(20);
  WalkConfig cfg;
  cfg.hub_count_per_side = 1;
  cfg.walks_per_side = 2000;
  const auto e = estimate_rwc(g, l, cfg);
  EXPECT_EQ(e.rwc, 1.0);
  EXPECT_EQ(e.p_xx, 1.0);
  EXPECT_EQ(e.p_yy, 1.0);
  EXPECT_EQ(e.stderr_rwc, 0.0);
}

TEST(EstimateRwcTest, CompleteGraphMatchesExactNearZero) {
  DirectedGraph g(20);
  PartitionLabeling l(20, Side::X);
  for (NodeId v = 10; v < 20; ++v) l.set(v, Side::Y);
  for (NodeId u = 0; u < 20; ++u)
    for (NodeId v = 0; v < 20; ++v) g.add_edge(u, v);
  WalkConfig cfg;
  cfg.hub_count_per_side = 1;
  cfg.seed = 17;
  const auto mc = estimate_rwc(g, l, cfg);
  const auto ex = exact_rwc(g, l, 1);
  // only the start-at-hub walks separate the sides: 1/10 of starts
  EXPECT_NEAR(ex.rwc, testing::iterated_rwc(g, l, 1, EdgeMode::symmetrized), 1e-12);
  EXPECT_LT(std::abs(ex.rwc), 0.15);
  EXPECT_LE(std::abs(mc.rwc - ex.rwc), 3 * mc.stderr_rwc);
}

TEST(EstimateRwcTest, TwoBlockFiftyNodesMatchesExact) {
  auto [g, l] = testing::two_block(25, 0.2, 0.01, 2024);
  WalkConfig cfg;
  cfg.hub_count_per_side = 2;
  cfg.seed = 99;
  const auto mc = estimate_rwc(g, l, cfg);
  const auto ex = exact_rwc(g, l, cfg);
  EXPECT_GT(mc.stderr_rwc, 0.0);
  EXPECT_LE(std::abs(mc.rwc - ex.rwc), 3 * mc.stderr_rwc);
}

TEST(EstimateRwcTest, RowsSumToOneAndRangeHolds) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto [g, l] = testing::two_block(10, 0.3, 0.1, rng());
    WalkConfig cfg;
    cfg.walks_per_side = 500;
    cfg.hub_count_per_side = 2;
    cfg.seed = rng();
    const auto e = estimate_rwc(g, l, cfg);
    EXPECT_NEAR(e.p_xx + e.p_xy, 1.0, 1e-12);
    EXPECT_NEAR(e.p_yx + e.p_yy, 1.0, 1e-12);
    EXPECT_GE(e.rwc, -1.0);
    EXPECT_LE(e.rwc, 1.0);
    EXPECT_NEAR(e.rwc, e.p_xx * e.p_yy - e.p_xy * e.p_yx, 1e-15);
    EXPECT_EQ(e.completed_walks_x + e.completed_walks_y + e.discarded_walks, 1000u);
  }
}

TEST(EstimateRwcTest, LabelSwapSymmetry) {
  auto [g, l] = testing::two_block(15, 0.25, 0.03, 77);
  WalkConfig cfg;
  cfg.hub_count_per_side = 2;
  const auto a = exact_rwc(g, l, cfg);
  const auto b = exact_rwc(g, l.swapped(), cfg);
  EXPECT_NEAR(a.rwc, b.rwc, 1e-12);
  EXPECT_NEAR(a.p_xx, b.p_yy, 1e-12);
  EXPECT_NEAR(a.p_xy, b.p_yx, 1e-12);
}

TEST(EstimateRwcTest, DeterministicAndThreadCountInvariant) {
  auto [g, l] = testing::two_block(30, 0.15, 0.02, 5);
  WalkConfig cfg;
  cfg.hub_count_per_side = 3;
  cfg.walks_per_side = 3000;
  cfg.seed = 1234;
  const auto one = estimate_rwc(g, l, cfg);
  EXPECT_EQ(one, estimate_rwc(g, l, cfg));
  for (unsigned t : {2u, 3u, 4u, 7u}) {
    cfg.threads = t;
    EXPECT_EQ(one, estimate_rwc(g, l, cfg)) << t << " threads";
  }
}

TEST(EstimateRwcTest, AllDiscardedFromOneSideFails) {
  // Y nodes are isolated and, with no Y hub supplied, no Y walk can finish.
  DirectedGraph g(4);
  PartitionLabeling l({Side::X, Side::X, Side::Y, Side::Y});
  g.add_edge(1, 0);
  const WalkGraph walk_graph(g, l, HubSet{{0}, {}}, EdgeMode::symmetrized);
  WalkConfig cfg;
  cfg.walks_per_side = 50;
  EXPECT_THROW(estimate_rwc(walk_graph, cfg), EstimationError);
}

TEST(EstimateRwcTest, DiscardedWalksAreExcludedFromProbabilities) {
  // X: hub 0 with follower 1, plus isolated node 2. A third of X starts are
  // discarded; the rest end in X.
  DirectedGraph g(5);
  PartitionLabeling l({Side::X, Side::X, Side::X, Side::Y, Side::Y});
  g.add_edge(1, 0);
  g.add_edge(4, 3);
  WalkConfig cfg;
  cfg.hub_count_per_side = 1;
  cfg.walks_per_side = 3000;
  const auto e = estimate_rwc(g, l, cfg);
  EXPECT_EQ(e.p_xx, 1.0);
  EXPECT_GT(e.discarded_walks, 800u);
  EXPECT_LT(e.discarded_walks, 1200u);
  EXPECT_EQ(e.completed_walks_x + e.discarded_walks, 3000u);
}

TEST(EstimateRwcTest, ConvergenceQuadrupledWalksHalveStderr) {
  auto [g, l] = testing::two_block(25, 0.2, 0.02, 31);
  double small = 0.0, large = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    WalkConfig cfg;
    cfg.hub_count_per_side = 2;
    cfg.seed = s;
    cfg.walks_per_side = 1000;
    small += estimate_rwc(g, l, cfg).stderr_rwc;
    cfg.walks_per_side = 4000;
    large += estimate_rwc(g, l, cfg).stderr_rwc;
  }
  const double ratio = large / small;
  EXPECT_NEAR(ratio, 0.5, 0.5 * 0.2);
}

TEST(WalkConfigTest, Validation) {
  WalkConfig cfg;
  cfg.walks_per_side = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = WalkConfig{};
  cfg.hub_count_per_side = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = WalkConfig{};
  cfg.max_steps = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  EXPECT_EQ(WalkConfig{}.step_limit(100), 1000u);
}

}  // namespace
}  // namespace rwc
