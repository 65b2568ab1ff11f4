#pragma once

#include "spandist/graph.hpp"

#include <vector>

namespace spandist {

enum class CoverMode { plain, client_server };

struct VerificationReport {
  bool valid = true;
  std::vector<EdgeId> uncovered;  // ascending
};

// Checks that every target edge has an h-path of length <= k between its
// endpoints (directed path u->v for an arc (u,v)). Targets are all edges in
// plain mode and client edges in client-server mode.
// Throws std::invalid_argument when k < 1, when h belongs to another graph,
// or when a client-server h contains a non-server edge.
VerificationReport verify_spanner(const Graph& g, const EdgeSubset& h, int k,
                                  CoverMode mode = CoverMode::plain);

// Which of `targets` have an h-path of length <= k. No mode checks.
EdgeSubset covered_edges(const Graph& g, const EdgeSubset& h, int k, const EdgeSubset& targets);

// Client edges that some server path of length <= k can cover.
EdgeSubset coverable_client_edges(const Graph& g, int k);

// Sum of weights (weighted graphs) or cardinality.
Weight spanner_cost(const Graph& g, const EdgeSubset& h);

// Hop distances from s, truncated at `limit` (-1 beyond). Ignores direction.
std::vector<int> bfs_distances(const Graph& g, VertexId s, int limit);

}  // namespace spandist
