#include "spandist/verify.hpp"

#include <algorithm>
#include <deque>

namespace spandist {

namespace {

// Truncated BFS in h from every source that owns a target; marks hits.
EdgeSubset bounded_reach(const Graph& g, const EdgeSubset& h, int k, const EdgeSubset& targets) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<VertexId>> adj(n);
  for (EdgeId e : h.ids()) {
    const Edge& x = g.edge(e);
    adj[static_cast<std::size_t>(x.u)].push_back(x.v);
    if (!g.directed()) adj[static_cast<std::size_t>(x.v)].push_back(x.u);
  }
  std::vector<std::vector<EdgeId>> by_source(n);
  for (EdgeId e : targets.ids()) by_source[static_cast<std::size_t>(g.edge(e).u)].push_back(e);

  EdgeSubset hit(static_cast<std::size_t>(g.edge_count()));
  std::vector<int> dist(n, -1);
  std::vector<VertexId> touched;
  std::deque<VertexId> q;
  for (std::size_t s = 0; s < n; ++s) {
    if (by_source[s].empty()) continue;
    dist[s] = 0;
    touched.assign(1, static_cast<VertexId>(s));
    q.assign(1, static_cast<VertexId>(s));
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop_front();
      int dx = dist[static_cast<std::size_t>(x)];
      if (dx == k) continue;
      for (VertexId y : adj[static_cast<std::size_t>(x)]) {
        if (dist[static_cast<std::size_t>(y)] >= 0) continue;
        dist[static_cast<std::size_t>(y)] = dx + 1;
        touched.push_back(y);
        q.push_back(y);
      }
    }
    for (EdgeId e : by_source[s])
      if (dist[static_cast<std::size_t>(g.edge(e).v)] >= 0) hit.set(e);
    for (VertexId x : touched) dist[static_cast<std::size_t>(x)] = -1;
  }
  return hit;
}

}  // namespace

EdgeSubset covered_edges(const Graph& g, const EdgeSubset& h, int k, const EdgeSubset& targets) {
  if (k < 1) throw std::invalid_argument("stretch k must be at least 1");
  return bounded_reach(g, h, k, targets);
}

VerificationReport verify_spanner(const Graph& g, const EdgeSubset& h, int k, CoverMode mode) {
  if (k < 1) throw std::invalid_argument("stretch k must be at least 1");
  const auto m = static_cast<std::size_t>(g.edge_count());
  if (h.universe() != m) throw std::invalid_argument("edge subset belongs to a different graph");
  EdgeSubset targets(m, true);
  if (mode == CoverMode::client_server) {
    if (!g.client_server()) throw std::invalid_argument("client-server check on a plain graph");
    for (EdgeId e : h.ids())
      if (!g.edge(e).server)
        throw std::invalid_argument("edge " + std::to_string(e) + " in h is not a server edge");
    targets = g.targets();
  }
  EdgeSubset hit = bounded_reach(g, h, k, targets);
  VerificationReport r;
  EdgeSubset missing = targets;
  missing -= hit;
  r.uncovered = missing.ids();
  r.valid = r.uncovered.empty();
  return r;
}

EdgeSubset coverable_client_edges(const Graph& g, int k) {
  return covered_edges(g, g.usable(), k, g.targets());
}

Weight spanner_cost(const Graph& g, const EdgeSubset& h) {
  if (!g.weighted()) return static_cast<Weight>(h.count());
  Weight total = 0;
  for (EdgeId e : h.ids()) total += g.edge(e).weight;
  return total;
}

std::vector<int> bfs_distances(const Graph& g, VertexId s, int limit) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  std::deque<VertexId> q{s};
  dist[static_cast<std::size_t>(s)] = 0;
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop_front();
    int dx = dist[static_cast<std::size_t>(x)];
    if (dx == limit) continue;
    for (VertexId y : g.neighbors(x)) {
      if (dist[static_cast<std::size_t>(y)] >= 0) continue;
      dist[static_cast<std::size_t>(y)] = dx + 1;
      q.push_back(y);
    }
  }
  return dist;
}

}  // namespace spandist
