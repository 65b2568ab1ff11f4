#include "random_graphs.hpp"
#include "spandist/graph.hpp"
#include "spandist/verify.hpp"

#include <gtest/gtest.h>

using namespace spandist;
using spandist::testing::complete_graph;
using spandist::testing::cycle_graph;

TEST(Parse, Triangle) {
  Graph g = parse_graph_string("p spanner 3 3 0 0\ne 0 1\ne 1 2\ne 0 2\n");
  EXPECT_EQ(g.vertex_count(), 3);
  EXPECT_EQ(g.edge_count(), 3);
  EXPECT_EQ(g.max_degree(), 2u);
  EXPECT_FALSE(g.directed());
}

TEST(Parse, DirectedArc) {
  Graph g = parse_graph_string("p spanner 2 1 1 0\ne 0 1\n");
  EXPECT_TRUE(g.directed());
  EXPECT_TRUE(g.find_edge(0, 1).has_value());
  EXPECT_FALSE(g.find_edge(1, 0).has_value());
}

TEST(Parse, WeightedEdge) {
  Graph g = parse_graph_string("# comment\np spanner 2 1 0 1\n\ne 1 0 5\n");
  EXPECT_EQ(g.edge(0).weight, 5);
  EXPECT_EQ(g.edge(0).u, 0);  // canonical order
  EXPECT_EQ(g.max_weight(), 5);
}

TEST(Parse, ClientServerFlags) {
  Graph g = parse_graph_string("p spanner 3 3 0 0 cs\ne 0 1 c\ne 1 2 s\ne 0 2 cs\n");
  EXPECT_TRUE(g.client_server());
  EXPECT_TRUE(g.edge(0).client && !g.edge(0).server);
  EXPECT_TRUE(g.edge(2).client && g.edge(2).server);
  EXPECT_EQ(g.targets().count(), 2u);
  EXPECT_EQ(g.usable().count(), 2u);
}

TEST(Parse, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_graph_string(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("p spanner 3\n"), 1u);
  EXPECT_EQ(line_of("p spanner 2 1 0 0\ne 0 2\n"), 2u);
  EXPECT_EQ(line_of("p spanner 3 2 0 0\ne 0 1\ne 1 0\n"), 3u);
  EXPECT_EQ(line_of("p spanner 2 1 0 1\n\ne 0 1 -3\n"), 3u);
  EXPECT_EQ(line_of("e 0 1\n"), 1u);
  EXPECT_EQ(line_of("p spanner 2 1 0 0\ne 1 1\n"), 2u);
  EXPECT_GT(line_of("p spanner 3 3 0 0\ne 0 1\n"), 0u);  // edge count mismatch
}

TEST(Parse, DirectedAllowsBothOrientations) {
  Graph g = parse_graph_string("p spanner 2 2 1 0\ne 0 1\ne 1 0\n");
  EXPECT_EQ(g.edge_count(), 2);
  EXPECT_EQ(g.max_degree(), 2u);
  EXPECT_EQ(g.neighbors(0).size(), 1u);
}

TEST(Format, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    GraphKind kind{t % 2 == 0, t % 3 == 0, t % 5 == 0 && t % 2 != 0};
    Graph g = spandist::testing::random_graph(9, 0.4, rng, false, kind);
    Graph h = parse_graph_string(format_graph(g));
    ASSERT_EQ(g.kind(), h.kind());
    ASSERT_EQ(g.edge_count(), h.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      EXPECT_EQ(g.edge(e).u, h.edge(e).u);
      EXPECT_EQ(g.edge(e).v, h.edge(e).v);
      EXPECT_EQ(g.edge(e).weight, h.edge(e).weight);
      EXPECT_EQ(g.edge(e).client, h.edge(e).client);
      EXPECT_EQ(g.edge(e).server, h.edge(e).server);
    }
  }
}

TEST(Verify, CycleMissingEdge) {
  Graph g = cycle_graph(5);
  EdgeSubset h = g.all_edges();
  h.reset(2);
  auto r = verify_spanner(g, h, 2);
  EXPECT_FALSE(r.valid);
  ASSERT_EQ(r.uncovered.size(), 1u);
  EXPECT_EQ(r.uncovered[0], 2);
  EXPECT_TRUE(verify_spanner(g, h, 4).valid);
  EXPECT_FALSE(verify_spanner(g, h, 3).valid);
}

TEST(Verify, FullStarOfK4) {
  Graph g = complete_graph(4);
  EdgeSubset h(6);
  for (EdgeId e : g.incident(0)) h.set(e);
  EXPECT_TRUE(verify_spanner(g, h, 2).valid);
  EXPECT_FALSE(verify_spanner(g, h, 1).valid);
}

TEST(Verify, DirectedTriangle) {
  // u=0 -> v=1 -> w=2, plus 0->2 and 2->0.
  Graph g = parse_graph_string("p spanner 3 4 1 0\ne 0 1\ne 1 2\ne 0 2\ne 2 0\n");
  EdgeSubset h(4);
  h.set(0);
  h.set(1);
  auto r = verify_spanner(g, h, 2);
  EXPECT_FALSE(r.valid);
  ASSERT_EQ(r.uncovered.size(), 1u);
  EXPECT_EQ(r.uncovered[0], 3);  // 2->0 has no directed path
}

TEST(Verify, ClientServerMode) {
  Graph g = parse_graph_string("p spanner 3 3 0 0 cs\ne 0 1 s\ne 1 2 s\ne 0 2 c\n");
  EdgeSubset h(3);
  h.set(0);
  h.set(1);
  EXPECT_TRUE(verify_spanner(g, h, 2, CoverMode::client_server).valid);
  EdgeSubset bad(3);
  bad.set(2);
  EXPECT_THROW(verify_spanner(g, bad, 2, CoverMode::client_server), std::invalid_argument);
}

TEST(Verify, RejectsBadArguments) {
  Graph g = cycle_graph(4);
  EXPECT_THROW(verify_spanner(g, g.all_edges(), 0), std::invalid_argument);
  EXPECT_THROW(verify_spanner(g, EdgeSubset(3), 2), std::invalid_argument);
}

TEST(Verify, AllEdgesValidAndMonotoneInK) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    Graph g = spandist::testing::random_graph(12, 0.3, rng);
    for (int k = 1; k <= 4; ++k) EXPECT_TRUE(verify_spanner(g, g.all_edges(), k).valid);
    EdgeSubset h(static_cast<std::size_t>(g.edge_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (rng() % 3 != 0) h.set(e);
    bool prev = false;
    for (int k = 1; k <= 6; ++k) {
      bool now = verify_spanner(g, h, k).valid;
      if (prev) EXPECT_TRUE(now);
      prev = now;
    }
  }
}

TEST(Cost, CardinalityAndWeights) {
  Graph k3 = complete_graph(3);
  EdgeSubset h(3);
  h.set(0);
  h.set(1);
  EXPECT_EQ(spanner_cost(k3, h), 2);
  EXPECT_EQ(spanner_cost(k3, EdgeSubset(3)), 0);
  Graph w = parse_graph_string("p spanner 3 2 0 1\ne 0 1 5\ne 1 2 0\n");
  EXPECT_EQ(spanner_cost(w, w.all_edges()), 5);
}

TEST(GraphInvariants, DegreeRecomputable) {
  std::mt19937_64 rng(5);
  Graph g = spandist::testing::random_graph(30, 0.2, rng, true, {true, false, false});
  std::size_t best = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::size_t d = 0;
    for (const Edge& e : g.edges()) d += (e.u == v) + (e.v == v);
    best = std::max(best, d);
  }
  EXPECT_EQ(best, g.max_degree());
}
