#include "random_graphs.hpp"
#include "spandist/spanner.hpp"
#include "spandist/verify.hpp"

#include <gtest/gtest.h>

using namespace spandist;
using spandist::testing::complete_graph;
using spandist::testing::cycle_graph;
using spandist::testing::path_graph;
using spandist::testing::random_graph;
using spandist::testing::star_graph;

namespace {

CertificateReport run_and_check(const Graph& g, Variant v, std::uint64_t seed) {
  SpannerOptions o;
  o.variant = v;
  o.seed = seed;
  SpannerResult r = two_spanner(g, o);
  CertificateReport c = certificate_check(g, r);
  for (const auto& s : c.violations) ADD_FAILURE() << s;
  EXPECT_TRUE(c.valid_spanner);
  EXPECT_TRUE(c.ok);
  return c;
}

}  // namespace

TEST(Spanner, TreeKeepsEveryEdge) {
  Graph g = path_graph(6);
  SpannerResult r = two_spanner(g, {});
  EXPECT_EQ(r.h.count(), 5u);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_EQ(r.h2.count(), 5u);
}

TEST(Spanner, CompleteGraphUsesStars) {
  Graph g = complete_graph(8);
  SpannerResult r = two_spanner(g, {});
  EXPECT_TRUE(verify_spanner(g, r.h, 2).valid);
  EXPECT_LT(r.h.count(), static_cast<std::size_t>(g.edge_count()));
  EXPECT_GT(r.h1.count(), 0u);
  run_and_check(g, Variant::undirected, 1);
}

TEST(Spanner, IsolatedVerticesHaltAtOnce) {
  Graph g(4, {}, {});
  SpannerResult r = two_spanner(g, {});
  EXPECT_EQ(r.h.count(), 0u);
  for (const auto& o : r.trace.outputs) ASSERT_TRUE(o.has_value());
}

TEST(Spanner, SameSeedSameTrace) {
  std::mt19937_64 rng(5);
  Graph g = random_graph(30, 0.3, rng);
  SpannerOptions o;
  o.seed = 9;
  auto a = two_spanner(g, o);
  o.threads = 3;
  auto b = two_spanner(g, o);
  EXPECT_EQ(a.trace.digest, b.trace.digest);
  EXPECT_TRUE(a.h == b.h);
}

TEST(Spanner, RandomUndirected) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 25; ++i) {
    Graph g = random_graph(8 + i, 0.15 + 0.02 * i, rng, i % 3 != 0);
    run_and_check(g, Variant::undirected, static_cast<std::uint64_t>(i));
  }
}

TEST(Spanner, SmallGraphFamilies) {
  run_and_check(cycle_graph(3), Variant::undirected, 1);
  run_and_check(cycle_graph(4), Variant::undirected, 1);
  run_and_check(star_graph(5), Variant::undirected, 1);
  run_and_check(complete_graph(2), Variant::undirected, 1);
}

TEST(Spanner, RandomDirected) {
  std::mt19937_64 rng(12);
  GraphKind k;
  k.directed = true;
  for (int i = 0; i < 20; ++i) {
    Graph g = random_graph(8 + i, 0.15 + 0.01 * i, rng, true, k);
    run_and_check(g, Variant::directed, static_cast<std::uint64_t>(i));
  }
}

TEST(Spanner, RandomWeighted) {
  std::mt19937_64 rng(13);
  GraphKind k;
  k.weighted = true;
  for (int i = 0; i < 20; ++i) {
    Graph g = random_graph(8 + i, 0.2 + 0.01 * i, rng, true, k, i % 4);
    run_and_check(g, Variant::weighted, static_cast<std::uint64_t>(i));
  }
}

TEST(Spanner, ZeroWeightEdgesComeFree) {
  std::vector<Edge> es;
  for (VertexId u = 0; u < 5; ++u)
    for (VertexId v = u + 1; v < 5; ++v) es.push_back({u, v, 0});
  GraphKind k;
  k.weighted = true;
  Graph g(5, es, k);
  SpannerOptions o;
  o.variant = Variant::weighted;
  auto r = two_spanner(g, o);
  EXPECT_EQ(r.h0.count(), 10u);
  EXPECT_EQ(spanner_cost(g, r.h), 0);
  EXPECT_EQ(r.iterations, 1u);
}

TEST(Spanner, RandomClientServer) {
  std::mt19937_64 rng(14);
  GraphKind k;
  k.client_server = true;
  for (int i = 0; i < 20; ++i) {
    Graph g = random_graph(8 + i, 0.25 + 0.01 * i, rng, true, k);
    auto c = run_and_check(g, Variant::client_server, static_cast<std::uint64_t>(i));
    (void)c;
  }
}

TEST(Spanner, VariantMustFit) {
  GraphKind k;
  k.directed = true;
  Graph g(2, {{0, 1}}, k);
  SpannerOptions o;
  EXPECT_THROW(two_spanner(g, o), std::invalid_argument);
}

TEST(Spanner, CheckerCatchesTampering) {
  Graph g = complete_graph(7);
  SpannerResult r = two_spanner(g, {});
  for (auto& ev : r.trace.events)
    if (ev.kind == "candidate") {
      ev.data[2] += 1;  // misreport |C_v|
      break;
    }
  auto c = certificate_check(g, r);
  EXPECT_FALSE(c.ok);
}
