#include "random_graphs.hpp"
#include "spandist/exact.hpp"
#include "spandist/ptas.hpp"
#include "spandist/verify.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace spandist;
using spandist::testing::complete_graph;
using spandist::testing::cycle_graph;
using spandist::testing::make_graph;
using spandist::testing::path_graph;
using spandist::testing::random_graph;
using spandist::testing::star_graph;

namespace {

Graph binary_tree(VertexId n) {
  std::vector<Edge> es;
  for (VertexId v = 1; v < n; ++v) es.push_back({(v - 1) / 2, v});
  return Graph(n, std::move(es), {});
}

}  // namespace

TEST(BallSpanner, Examples) {
  Graph tree = binary_tree(7);
  auto all = tree.all_edges();
  EXPECT_EQ(ball_spanner_size(tree, 0, 1, 2, all).size, 2);
  EXPECT_EQ(ball_spanner_size(tree, 0, 2, 2, all).size, 6);
  // K_4 plus a pendant path; the ball of radius 2 around 0 is the K_4.
  Graph g = make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}});
  auto in_k4 = g.all_edges();
  in_k4.reset(6);
  in_k4.reset(7);
  auto b = ball_spanner_size(g, 0, 2, 2, in_k4);
  EXPECT_EQ(b.size, 3);
  EXPECT_EQ(ball_spanner_size(g, 0, 2, 2, EdgeSubset(8)).size, 0);
}

TEST(BallSpanner, WitnessStaysNearTheBall) {
  std::mt19937_64 rng(2);
  Graph g = random_graph(14, 0.25, rng);
  auto b = ball_spanner_size(g, 0, 1, 2, g.all_edges());
  auto dist = bfs_distances(g, 0, g.vertex_count());
  for (EdgeId e : b.witness.ids()) {
    EXPECT_LE(dist[static_cast<std::size_t>(g.edge(e).u)], 3);
    EXPECT_LE(dist[static_cast<std::size_t>(g.edge(e).v)], 3);
  }
}

TEST(PtasSequential, TreesKeepEveryEdge) {
  for (Graph g : {binary_tree(9), path_graph(6), star_graph(5)}) {
    auto r = ptas_sequential(g, 2, Ratio::parse("0.5"));
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.h.count(), static_cast<std::size_t>(g.edge_count()));
  }
}

TEST(PtasSequential, SmallExamples) {
  auto c5 = ptas_sequential(cycle_graph(5), 2, Ratio::parse("0.5"));
  EXPECT_EQ(c5.h.count(), 5u);
  auto k4 = ptas_sequential(complete_graph(4), 2, Ratio(1));
  EXPECT_TRUE(k4.ok);
  EXPECT_GE(k4.h.count(), 3u);
  EXPECT_LE(k4.h.count(), 6u);
  EXPECT_THROW(ptas_sequential(complete_graph(4), 2, Ratio(0)), std::invalid_argument);
}

TEST(PtasSequential, WithinFactorOfOptimum) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 8; ++i) {
    Graph g = random_graph(10 + i % 3, 0.35, rng);
    for (const char* eps : {"0.5", "1"}) {
      Ratio e = Ratio::parse(eps);
      auto r = ptas_sequential(g, 2, e);
      ASSERT_TRUE(r.ok) << to_json(r).dump();
      auto opt = min_spanner_exact(g, 2, Variant::undirected);
      EXPECT_TRUE(verify_spanner(g, r.h, 2).valid);
      EXPECT_LE(BigRational(static_cast<std::int64_t>(r.h.count())),
                (BigRational(1) + e.big()) * BigRational(opt.cost));
    }
  }
}

TEST(PtasSequential, OtherVariants) {
  std::mt19937_64 rng(8);
  GraphKind wk;
  wk.weighted = true;
  Graph wg = random_graph(9, 0.4, rng, true, wk, 4);
  auto wr = ptas_sequential(wg, 2, Ratio(1));
  EXPECT_TRUE(wr.ok) << to_json(wr).dump();
  EXPECT_LE(spanner_cost(wg, wr.h), 2 * min_spanner_exact(wg, 2, Variant::weighted).cost);

  GraphKind dk;
  dk.directed = true;
  Graph dg = random_graph(8, 0.3, rng, true, dk);
  auto dr = ptas_sequential(dg, 3, Ratio(1));
  EXPECT_TRUE(dr.ok) << to_json(dr).dump();
  EXPECT_LE(static_cast<Weight>(dr.h.count()), 2 * min_spanner_exact(dg, 3, Variant::directed).cost);
}

TEST(NetworkDecomposition, Invariants) {
  Graph one(1, {}, {});
  auto d1 = network_decomposition(one, 1, 3);
  EXPECT_EQ(d1.colors, 1);
  EXPECT_TRUE(check_decomposition(one, d1).ok);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Graph p = path_graph(10);
    auto d = network_decomposition(p, 2, seed);
    auto rep = check_decomposition(p, d);
    EXPECT_TRUE(rep.ok) << to_json(rep).dump();
    Graph k = complete_graph(9);
    auto dk = network_decomposition(k, 1, seed);
    EXPECT_TRUE(check_decomposition(k, dk).ok);
  }
}

TEST(NetworkDecomposition, SparseLongGraphs) {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Graph g = random_graph(40, 0.06, rng);
    auto d = network_decomposition(g, 1, seed);
    auto rep = check_decomposition(g, d);
    EXPECT_TRUE(rep.ok) << to_json(rep).dump();
    EXPECT_EQ(d.base_rounds, d.trace.rounds);
  }
}

TEST(NetworkDecomposition, Deterministic) {
  Graph p = path_graph(12);
  auto a = network_decomposition(p, 2, 5, 1);
  auto b = network_decomposition(p, 2, 5, 3);
  EXPECT_EQ(a.trace.digest, b.trace.digest);
  EXPECT_EQ(a.cluster, b.cluster);
}

TEST(PtasDistributed, MatchesSequentialAndBound) {
  std::mt19937_64 rng(12);
  Graph g = random_graph(12, 0.35, rng);
  auto opt = min_spanner_exact(g, 2, Variant::undirected);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    PtasOptions o;
    o.k = 2;
    o.epsilon = Ratio(1);
    o.seed = seed;
    auto r = ptas_distributed(g, o);
    EXPECT_TRUE(r.matches_sequential);
    EXPECT_TRUE(r.run.ok) << to_json(r.run).dump();
    EXPECT_LE(static_cast<Weight>(r.run.h.count()), 2 * opt.cost);
    EXPECT_GT(r.base_rounds, 0u);
  }
}

TEST(PtasDistributed, ParallelClustersMatch) {
  // A long path makes G^r sparse enough for several clusters of one color.
  Graph p = path_graph(400);
  PtasOptions o;
  o.k = 1;
  o.epsilon = Ratio(4);
  o.seed = 2;
  o.budget.max_vertices = 1000;
  o.budget.max_edges = 1000;
  auto r = ptas_distributed(p, o);
  EXPECT_TRUE(r.matches_sequential);
  EXPECT_EQ(r.run.h.count(), 399u);
  EXPECT_TRUE(check_decomposition(p, r.decomposition).ok);
  std::map<int, std::set<std::int64_t>> per_color;
  for (VertexId v = 0; v < 400; ++v)
    per_color[r.decomposition.color[static_cast<std::size_t>(v)]].insert(r.decomposition.cluster[static_cast<std::size_t>(v)]);
  std::size_t widest = 0;
  for (const auto& [c, ids] : per_color) widest = std::max(widest, ids.size());
  EXPECT_GE(widest, 2u);
}

TEST(PtasDistributed, CycleAndTree) {
  PtasOptions o;
  o.epsilon = Ratio::parse("0.5");
  EXPECT_EQ(ptas_distributed(cycle_graph(5), o).run.h.count(), 5u);
  EXPECT_EQ(ptas_distributed(binary_tree(10), o).run.h.count(), 9u);
}
