#include "random_graphs.hpp"
#include "spandist/densest.hpp"
#include "spandist/exact.hpp"
#include "spandist/mds.hpp"
#include "spandist/verify.hpp"

#include <gtest/gtest.h>

using namespace spandist;
using spandist::testing::complete_graph;
using spandist::testing::cycle_graph;
using spandist::testing::make_graph;
using spandist::testing::path_graph;
using spandist::testing::random_graph;
using spandist::testing::star_graph;

namespace {

// Unpruned enumeration over all edge subsets.
Weight enumerate_min(const Graph& g, int k, Variant v) {
  const auto m = static_cast<std::size_t>(g.edge_count());
  Weight best = -1;
  auto usable = g.usable();
  auto mode = v == Variant::client_server ? CoverMode::client_server : CoverMode::plain;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    EdgeSubset h(m);
    bool ok = true;
    Weight c = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) {
        if (!usable.test(static_cast<EdgeId>(i))) ok = false;
        h.set(static_cast<EdgeId>(i));
        c += v == Variant::weighted ? g.edge(static_cast<EdgeId>(i)).weight : 1;
      }
    if (!ok || (best >= 0 && c >= best)) continue;
    if (verify_spanner(g, h, k, mode).valid) best = c;
  }
  return best;
}

bool is_cover(const Graph& g, const std::vector<VertexId>& c) {
  for (const Edge& e : g.edges())
    if (std::find(c.begin(), c.end(), e.u) == c.end() && std::find(c.begin(), c.end(), e.v) == c.end()) return false;
  return true;
}

}  // namespace

TEST(ExactSpanner, Examples) {
  EXPECT_EQ(min_spanner_exact(complete_graph(4), 2, Variant::undirected).cost, 3);
  EXPECT_EQ(min_spanner_exact(cycle_graph(5), 2, Variant::undirected).cost, 5);
  GraphKind k;
  k.weighted = true;
  Graph tri(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 10}}, k);
  auto r = min_spanner_exact(tri, 2, Variant::weighted);
  EXPECT_EQ(r.cost, 2);
  EXPECT_TRUE(verify_spanner(tri, r.witness, 2).valid);
}

TEST(ExactSpanner, AgreesWithEnumeration) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    GraphKind kind;
    Variant v = Variant::undirected;
    switch (i % 4) {
      case 1: kind.directed = true; v = Variant::directed; break;
      case 2: kind.weighted = true; v = Variant::weighted; break;
      case 3: kind.client_server = true; v = Variant::client_server; break;
      default: break;
    }
    Graph g = random_graph(6, kind.directed ? 0.3 : 0.55, rng, false, kind, 3);
    if (g.edge_count() > 12) continue;
    int k = 2 + i % 2;
    Weight want = enumerate_min(g, k, v);
    if (want < 0) {
      EXPECT_THROW(min_spanner_exact(g, k, v), InfeasibleInstance);
      continue;
    }
    auto got = min_spanner_exact(g, k, v, {}, true);
    EXPECT_EQ(got.cost, want) << format_graph(g);
    auto mode = v == Variant::client_server ? CoverMode::client_server : CoverMode::plain;
    EXPECT_TRUE(verify_spanner(g, got.witness, k, mode).valid);
  }
}

TEST(ExactSpanner, CanonicalWitnessIsStable) {
  Graph g = complete_graph(5);
  auto a = min_spanner_exact(g, 2, Variant::undirected, {}, true);
  auto b = min_spanner_exact(g, 2, Variant::undirected, {}, true);
  EXPECT_TRUE(a.witness == b.witness);
  EXPECT_EQ(a.cost, 4);
  // K_5's smallest ids form the star at vertex 0.
  EXPECT_EQ(a.witness.ids(), (std::vector<EdgeId>{0, 1, 2, 3}));
}

TEST(ExactSpanner, BudgetIsEnforced) {
  OracleBudget b;
  b.max_nodes = 3;
  std::mt19937_64 rng(2);
  Graph g = random_graph(14, 0.5, rng);
  EXPECT_THROW(min_spanner_exact(g, 2, Variant::undirected, b), BudgetExceeded);
  OracleBudget e;
  e.max_edges = 5;
  EXPECT_THROW(min_spanner_exact(complete_graph(4), 2, Variant::undirected, e), BudgetExceeded);
}

TEST(ExactSpanner, InfeasibleClientServer) {
  GraphKind k;
  k.client_server = true;
  Graph g(2, {{0, 1, 1, true, false}}, k);
  try {
    min_spanner_exact(g, 2, Variant::client_server);
    FAIL();
  } catch (const InfeasibleInstance& e) {
    EXPECT_EQ(e.edges(), std::vector<EdgeId>{0});
  }
  EXPECT_EQ(min_spanner_exact(g, 2, Variant::client_server, {}, false, true).cost, 0);
}

TEST(ExactVertex, Examples) {
  EXPECT_EQ(min_vertex_cover_exact(path_graph(3)).size, 1u);
  EXPECT_EQ(min_vertex_cover_exact(path_graph(3)).witness, std::vector<VertexId>{1});
  EXPECT_EQ(min_vertex_cover_exact(cycle_graph(5)).size, 3u);
  EXPECT_EQ(min_vertex_cover_exact(complete_graph(4)).size, 3u);
  EXPECT_EQ(min_dominating_set_exact(star_graph(4)).size, 1u);
  EXPECT_EQ(min_dominating_set_exact(cycle_graph(4)).size, 2u);
  EXPECT_EQ(min_dominating_set_exact(path_graph(7)).size, 3u);
}

TEST(ExactVertex, AgreesWithEnumeration) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    Graph g = random_graph(4 + i % 8, 0.35, rng, i % 2 == 0);
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::size_t vc = n, ds = n;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<VertexId> s;
      for (std::size_t v = 0; v < n; ++v)
        if (mask >> v & 1) s.push_back(static_cast<VertexId>(v));
      if (is_cover(g, s)) vc = std::min(vc, s.size());
      if (is_dominating(g, s)) ds = std::min(ds, s.size());
    }
    auto c = min_vertex_cover_exact(g);
    auto d = min_dominating_set_exact(g);
    EXPECT_EQ(c.size, vc);
    EXPECT_EQ(d.size, ds);
    EXPECT_TRUE(is_cover(g, c.witness));
    EXPECT_TRUE(is_dominating(g, d.witness));
  }
}

TEST(ExactDensest, Examples) {
  auto t = densest_subgraph_brute(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(t.density, Ratio(1));
  EXPECT_EQ(t.subset, (std::vector<int>{0, 1, 2}));
  auto e = densest_subgraph_brute(3, {});
  EXPECT_EQ(e.density, Ratio(0));
  EXPECT_EQ(e.subset, std::vector<int>{0});
  auto k4m = densest_subgraph_brute(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  EXPECT_EQ(k4m.density, Ratio(5, 4));
}

TEST(ExactDensest, MatchesFlowSolver) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    int n = 1 + static_cast<int>(rng() % 9);
    DensestInput in;
    std::vector<Weight> w;
    for (int v = 0; v < n; ++v) {
      in.label.push_back(v);
      w.push_back(1 + static_cast<Weight>(rng() % (i % 2 ? 4 : 1)));
    }
    in.cost = w;
    std::vector<std::pair<int, int>> es;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 3 == 0) es.emplace_back(a, b);
    in.edges = es;
    auto brute = densest_subgraph_brute(n, es, w);
    auto flow = densest_subset(in, true);
    EXPECT_EQ(flow.density, brute.density);
  }
}

TEST(ExactDirected, PrefixRuleMatchesFullEnumeration) {
  std::mt19937_64 rng(23);
  GraphKind k;
  k.directed = true;
  for (int i = 0; i < 60; ++i) {
    Graph g = random_graph(7, 0.4, rng, false, k);
    StarProblem p = make_star_problem(g, 0, g.all_edges(), Variant::directed);
    if (p.slots.empty() || p.slots.size() > 14) continue;
    Ratio best(0);
    for (std::uint32_t mask = 1; mask < (1u << p.slots.size()); ++mask) {
      std::vector<int> s;
      for (std::size_t j = 0; j < p.slots.size(); ++j)
        if (mask >> j & 1) s.push_back(static_cast<int>(j));
      best = std::max(best, evaluate_slots(p, s).density);
    }
    auto ex = directed_star_density_exact(p);
    EXPECT_EQ(ex.density, best);
    EXPECT_EQ(evaluate_slots(p, ex.slots).density, ex.density);
  }
}
