#pragma once

#include "spandist/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace spandist::testing {

inline Graph make_graph(VertexId n, std::initializer_list<std::pair<VertexId, VertexId>> pairs,
                        GraphKind kind = {}) {
  std::vector<Edge> es;
  for (auto [u, v] : pairs) es.push_back({u, v, 1, false, false});
  return Graph(n, std::move(es), kind);
}

inline Graph complete_graph(VertexId n) {
  std::vector<Edge> es;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) es.push_back({u, v});
  return Graph(n, std::move(es), {});
}

inline Graph cycle_graph(VertexId n) {
  std::vector<Edge> es;
  for (VertexId u = 0; u < n; ++u) es.push_back({u, (u + 1) % n});
  return Graph(n, std::move(es), {});
}

inline Graph path_graph(VertexId n) {
  std::vector<Edge> es;
  for (VertexId u = 0; u + 1 < n; ++u) es.push_back({u, u + 1});
  return Graph(n, std::move(es), {});
}

inline Graph star_graph(VertexId leaves) {
  std::vector<Edge> es;
  for (VertexId u = 1; u <= leaves; ++u) es.push_back({0, u});
  return Graph(leaves + 1, std::move(es), {});
}

// G(n,p); optionally patched to be connected by linking components along a
// random spanning path of representatives.
inline Graph random_graph(VertexId n, double p, std::mt19937_64& rng, bool connect = true,
                          GraphKind kind = {}, Weight max_w = 5) {
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<Weight> wdist(0, max_w);
  std::uniform_int_distribution<int> flag(0, 2);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = 0; v < n; ++v) {
      if (u == v || (!kind.directed && v < u)) continue;
      if (coin(rng)) pairs.emplace_back(u, v);
    }
  if (connect && n > 1) {
    std::vector<VertexId> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](VertexId x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
      return x;
    };
    for (auto [u, v] : pairs) parent[static_cast<std::size_t>(find(u))] = find(v);
    std::vector<VertexId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 1; i < order.size(); ++i) {
      VertexId a = order[i - 1], b = order[i];
      if (find(a) == find(b)) continue;
      parent[static_cast<std::size_t>(find(a))] = find(b);
      bool have = false;
      for (auto [x, y] : pairs)
        if ((x == a && y == b) || (x == b && y == a)) have = true;
      if (!have) pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::vector<Edge> es;
  for (auto [u, v] : pairs) {
    Edge e{u, v, 1, false, false};
    if (kind.weighted) e.weight = wdist(rng);
    if (kind.client_server) {
      int f = flag(rng);
      e.client = f != 1;
      e.server = f != 0;
    }
    es.push_back(e);
  }
  return Graph(n, std::move(es), kind);
}

// All simple undirected graphs on n labelled vertices, as edge masks.
inline std::vector<Graph> all_graphs(VertexId n, bool connected_only) {
  std::vector<std::pair<VertexId, VertexId>> slots;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<Edge> es;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask >> i & 1) es.push_back({slots[i].first, slots[i].second});
    Graph g(n, std::move(es), {});
    if (connected_only && g.component_count() != 1) continue;
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace spandist::testing
