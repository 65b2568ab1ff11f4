#include "random_graphs.hpp"
#include "spandist/mds.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace spandist;
using spandist::testing::complete_graph;
using spandist::testing::cycle_graph;
using spandist::testing::random_graph;
using spandist::testing::star_graph;

namespace {

MdsResult checked(const Graph& g, std::uint64_t seed) {
  MdsOptions o;
  o.seed = seed;
  MdsResult r = mds(g, o);
  MdsCertificate c = mds_check(g, r);
  for (const auto& s : c.violations) ADD_FAILURE() << s;
  EXPECT_TRUE(c.ok);
  EXPECT_TRUE(c.dominating);
  return r;
}

}  // namespace

TEST(Mds, StarPicksCenter) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto r = checked(star_graph(4), seed);
    EXPECT_EQ(r.dominating, std::vector<VertexId>{0});
  }
}

TEST(Mds, EdgePicksOneEndpoint) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto r = checked(complete_graph(2), seed);
    EXPECT_EQ(r.dominating.size(), 1u);
  }
}

TEST(Mds, CycleOfFour) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto r = checked(cycle_graph(4), seed);
    EXPECT_GE(r.dominating.size(), 2u);
  }
}

TEST(Mds, IsolatedVertexDominatesItself) {
  Graph g(3, {{0, 1}}, {});
  auto r = checked(g, 3);
  EXPECT_TRUE(std::find(r.dominating.begin(), r.dominating.end(), 2) != r.dominating.end());
}

TEST(Mds, RandomGraphsAndMessageSize) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 30; ++i) {
    Graph g = random_graph(10 + 3 * i, 0.1 + 0.01 * i, rng);
    MdsOptions o;
    o.seed = static_cast<std::uint64_t>(i);
    o.record_messages = true;
    auto r = mds(g, o);
    auto c = mds_check(g, r);
    EXPECT_TRUE(c.ok) << (c.violations.empty() ? "" : c.violations[0]);
    auto a = audit(r.trace, g);
    auto lg = static_cast<std::uint32_t>(std::ceil(std::log2(g.vertex_count())));
    EXPECT_LE(a.max_message_bits, 16 * lg);
  }
}

TEST(Mds, Deterministic) {
  std::mt19937_64 rng(3);
  Graph g = random_graph(40, 0.2, rng);
  MdsOptions o;
  o.seed = 4;
  auto a = mds(g, o);
  o.threads = 4;
  auto b = mds(g, o);
  EXPECT_EQ(a.trace.digest, b.trace.digest);
}
