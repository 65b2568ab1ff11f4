#include "random_graphs.hpp"
#include "spandist/exact.hpp"
#include "spandist/gadget.hpp"
#include "spandist/spanner.hpp"
#include "spandist/verify.hpp"

#include <gtest/gtest.h>

using namespace spandist;
using spandist::testing::make_graph;
using spandist::testing::path_graph;
using spandist::testing::random_graph;

namespace {

std::string random_bits(int len, std::mt19937_64& rng, double p1 = 0.5) {
  std::bernoulli_distribution coin(p1);
  std::string s;
  for (int i = 0; i < len; ++i) s += coin(rng) ? '1' : '0';
  return s;
}

}  // namespace

TEST(DisjointnessGadget, Counts) {
  auto g = gen_disjointness_gadget(2, 2, "0000", "0000");
  EXPECT_EQ(g.graph.vertex_count(), 18);
  EXPECT_EQ(g.d.count(), 16u);
  EXPECT_EQ(*audit(Trace{}, g.graph, g.partition).cut_edges, 6u);
  EXPECT_EQ(gen_disjointness_gadget(2, 3, "0110", "1001").graph.vertex_count(), 22);
  EXPECT_EQ(g.labels[static_cast<std::size_t>(g.x(2, 1))], "x_2_1");
  EXPECT_EQ(g.labels[static_cast<std::size_t>(g.y3(2))], "y3^2");
}

TEST(DisjointnessGadget, BadStrings) {
  EXPECT_THROW(gen_disjointness_gadget(2, 2, "000", "0000"), std::invalid_argument);
  EXPECT_THROW(gen_disjointness_gadget(2, 2, "0020", "0000"), std::invalid_argument);
  EXPECT_THROW(gen_disjointness_gadget(0, 2, "", ""), std::invalid_argument);
}

TEST(DisjointnessGadget, SingleBitCoverable) {
  auto g = gen_disjointness_gadget(1, 1, "1", "0");
  EXPECT_TRUE(g.graph.find_edge(g.y1(1), g.y2(1)).has_value());
  EXPECT_FALSE(g.graph.find_edge(g.x1(1), g.x2(1)).has_value());
  auto rep = verify_gadget_claims(g, 5);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.forced_d_edges, 0u);
}

TEST(DisjointnessGadget, DisjointSparseSpanner) {
  auto rep = verify_gadget_claims(gen_disjointness_gadget(2, 2, "0000", "0000"), 5);
  EXPECT_TRUE(rep.ok) << to_json(rep).dump();
  EXPECT_LE(rep.sparse_spanner_size, 28u);
  EXPECT_EQ(rep.size_bound, 28);
}

TEST(DisjointnessGadget, ForcedEdges) {
  auto g = gen_disjointness_gadget(2, 2, "1000", "1000");
  auto rep = verify_gadget_claims(g, 5);
  EXPECT_TRUE(rep.ok) << to_json(rep).dump();
  EXPECT_EQ(rep.forced_d_edges, 4u);
  auto all = verify_gadget_claims(gen_disjointness_gadget(2, 2, "1111", "1111"), 6);
  EXPECT_TRUE(all.ok);
  EXPECT_EQ(all.forced_d_edges, 16u);
  EXPECT_THROW(verify_gadget_claims(g, 4), std::invalid_argument);
}

TEST(DisjointnessGadget, RandomShapes) {
  std::mt19937_64 rng(11);
  for (int l = 1; l <= 3; ++l)
    for (int beta = 1; beta <= 3; ++beta)
      for (int rep = 0; rep < 6; ++rep) {
        auto g = gen_disjointness_gadget(l, beta, random_bits(l * l, rng, 0.3), random_bits(l * l, rng, 0.3));
        auto r = verify_gadget_claims(g, 5 + rep % 2);
        EXPECT_TRUE(r.ok) << to_json(r).dump();
      }
}

TEST(DisjointnessGadget, CutBitsMatchRecomputation) {
  auto gd = gen_disjointness_gadget(2, 2, "0100", "1000");
  // The gadget is directed; run the directed algorithm and recount by hand.
  SpannerOptions opt;
  opt.variant = Variant::directed;
  opt.seed = 3;
  opt.record_messages = true;
  auto res = two_spanner(gd.graph, opt);
  auto rep = audit(res.trace, gd.graph, gd.partition);
  std::vector<char> side_b(static_cast<std::size_t>(gd.graph.vertex_count()), 0);
  for (VertexId v : gd.partition.side_b) side_b[static_cast<std::size_t>(v)] = 1;
  std::uint64_t bits = 0;
  for (const auto& m : res.trace.messages)
    if (side_b[static_cast<std::size_t>(m.from)] != side_b[static_cast<std::size_t>(m.to)]) bits += m.bits;
  EXPECT_EQ(*rep.cut_bits, bits);
  EXPECT_EQ(*rep.cut_edges, 6u);
}

TEST(WeightedGadget, DirectedDisjoint) {
  auto g = gen_weighted_gadget(3, 4, true, "010001100", "101000010");
  EXPECT_EQ(g.graph.vertex_count(), 18);
  auto r = verify_weighted_gadget(g);
  EXPECT_TRUE(r.ok) << to_json(r).dump();
  EXPECT_TRUE(r.zero_cost_spanner);
}

TEST(WeightedGadget, DirectedIntersecting) {
  auto g = gen_weighted_gadget(1, 4, true, "1", "1");
  auto r = verify_weighted_gadget(g);
  EXPECT_TRUE(r.ok);
  EXPECT_FALSE(r.zero_cost_spanner);
  ASSERT_EQ(r.blocked.size(), 1u);
  EXPECT_EQ(r.blocked[0], std::make_pair(1, 1));
  // The weighted oracle agrees: the cheapest 4-spanner pays for one D edge.
  EXPECT_EQ(min_cover_exact(g.graph, 4, g.graph.all_edges(), g.graph.all_edges(), true).cost, 1);
}

TEST(WeightedGadget, UndirectedPathLengthened) {
  auto g = gen_weighted_gadget(2, 6, false, "0000", "0000");
  EXPECT_EQ(g.graph.vertex_count(), 6 * 2 + 2 * 2);
  auto r = verify_weighted_gadget(g);
  EXPECT_TRUE(r.ok) << to_json(r).dump();
  EXPECT_TRUE(r.zero_cost_spanner);
  EXPECT_THROW(gen_weighted_gadget(2, 3, false, "0000", "0000"), std::invalid_argument);
}

TEST(WeightedGadget, RandomInputs) {
  std::mt19937_64 rng(5);
  for (int k = 4; k <= 6; ++k)
    for (bool directed : {true, false})
      for (int l = 1; l <= 3; ++l)
        for (int rep = 0; rep < 10; ++rep) {
          auto g = gen_weighted_gadget(l, k, directed, random_bits(l * l, rng, 0.25), random_bits(l * l, rng, 0.25));
          auto r = verify_weighted_gadget(g);
          EXPECT_TRUE(r.ok) << to_json(r).dump();
        }
}

TEST(MvcReduction, Shapes) {
  auto one = gen_mvc_reduction(make_graph(2, {{0, 1}}));
  EXPECT_EQ(one.gs.vertex_count(), 6);
  EXPECT_EQ(one.gs.edge_count(), 9);
  auto p3 = gen_mvc_reduction(path_graph(3));
  EXPECT_EQ(p3.gs.vertex_count(), 9);
  EXPECT_EQ(p3.gs.edge_count(), 15);
  auto empty = gen_mvc_reduction(make_graph(2, {}));
  EXPECT_EQ(empty.gs.edge_count(), 6);
  EXPECT_EQ(empty.gs.component_count(), 2u);
  for (const Edge& e : p3.gs.edges()) EXPECT_TRUE(e.weight >= 0 && e.weight <= 2);
  auto dir = gen_mvc_reduction(make_graph(2, {{0, 1}}), true);
  EXPECT_EQ(dir.gs.edge_count(), 6 + 5);
}

TEST(MvcReduction, ForwardMap) {
  auto r = gen_mvc_reduction(make_graph(2, {{0, 1}}));
  auto h = cover_to_spanner(r, {0});
  EXPECT_EQ(spanner_cost(r.gs, h), 1);
  EXPECT_TRUE(verify_spanner(r.gs, h, 2).valid);
  EXPECT_THROW(cover_to_spanner(r, {}), std::invalid_argument);
}

TEST(MvcReduction, CanonicalSwap) {
  auto r = gen_mvc_reduction(make_graph(2, {{0, 1}}));
  EdgeSubset h(static_cast<std::size_t>(r.gs.edge_count()));
  for (EdgeId e = 0; e < r.gs.edge_count(); ++e)
    if (r.gs.edge(e).weight != 1) h.set(e);
  ASSERT_TRUE(verify_spanner(r.gs, h, 2).valid);
  auto hp = canonicalize_spanner(r, h);
  EXPECT_LE(spanner_cost(r.gs, hp), spanner_cost(r.gs, h));
  for (EdgeId e : hp.ids()) EXPECT_NE(r.gs.edge(e).weight, 2);
  auto c = spanner_to_cover(r, h);
  EXPECT_EQ(c, (std::vector<VertexId>{0, 1}));
}

TEST(MvcReduction, OracleRoundTrip) {
  std::mt19937_64 rng(3);
  std::vector<Graph> gs{path_graph(3)};
  for (int i = 0; i < 8; ++i) gs.push_back(random_graph(6, 0.4, rng, false));
  for (const Graph& g : gs) {
    auto r = gen_mvc_reduction(g);
    auto mvc = min_vertex_cover_exact(g);
    auto sp = min_spanner_reduction_instance(r.gs);
    EXPECT_EQ(sp.cost, static_cast<Weight>(mvc.size));
    auto h = cover_to_spanner(r, mvc.witness);
    EXPECT_EQ(spanner_cost(r.gs, h), static_cast<Weight>(mvc.size));
    EXPECT_TRUE(verify_spanner(r.gs, h, 2).valid);
    auto back = spanner_to_cover(r, sp.witness);
    EXPECT_LE(static_cast<Weight>(back.size()), sp.cost);
  }
  // The general branch-and-bound agrees on small cases.
  auto r = gen_mvc_reduction(path_graph(3));
  EXPECT_EQ(min_spanner_exact(r.gs, 2, Variant::weighted).cost, 1);
}

TEST(MvcReduction, DistributedRunMapsBack) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 5; ++i) {
    auto g = random_graph(7, 0.4, rng, false);
    auto r = gen_mvc_reduction(g);
    SpannerOptions opt;
    opt.variant = Variant::weighted;
    opt.seed = static_cast<std::uint64_t>(i + 1);
    auto res = two_spanner(r.gs, opt);
    auto c = spanner_to_cover(r, res.h);
    for (const Edge& e : g.edges())
      EXPECT_TRUE(std::binary_search(c.begin(), c.end(), e.u) || std::binary_search(c.begin(), c.end(), e.v));
    EXPECT_LE(static_cast<Weight>(c.size()), spanner_cost(r.gs, res.h));
  }
}

TEST(MvcReduction, DirectedVariantRoundTrip) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 4; ++i) {
    auto g = random_graph(5, 0.5, rng, false);
    auto r = gen_mvc_reduction(g, true);
    auto mvc = min_vertex_cover_exact(g);
    auto h = cover_to_spanner(r, mvc.witness);
    EXPECT_TRUE(verify_spanner(r.gs, h, 2).valid);
    EXPECT_EQ(min_cover_exact(r.gs, 2, r.gs.all_edges(), r.gs.all_edges(), true).cost, static_cast<Weight>(mvc.size));
  }
}
