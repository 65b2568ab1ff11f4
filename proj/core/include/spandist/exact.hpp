#pragma once

#include "spandist/graph.hpp"
#include "spandist/rational.hpp"
#include "spandist/star.hpp"

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spandist {

struct OracleBudget {
  EdgeId max_edges = 400;
  VertexId max_vertices = 256;
  std::uint64_t max_nodes = 50'000'000;   // search nodes
  std::size_t max_paths = 2'000'000;      // candidate covering paths
  double time_cap_seconds = 600;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& cap, const std::string& detail)
      : std::runtime_error("oracle budget exceeded (" + cap + "): " + detail), cap_(cap) {}
  const std::string& cap() const { return cap_; }

 private:
  std::string cap_;
};

class InfeasibleInstance : public std::runtime_error {
 public:
  explicit InfeasibleInstance(std::vector<EdgeId> edges)
      : std::runtime_error("some target edges have no usable path"), edges_(std::move(edges)) {}
  const std::vector<EdgeId>& edges() const { return edges_; }

 private:
  std::vector<EdgeId> edges_;
};

struct SpannerOptimum {
  Weight cost = 0;
  EdgeSubset witness;
  std::uint64_t nodes = 0;
};

// Cheapest h within `usable` giving every edge of `targets` an h-path of
// length <= k (directed paths on directed graphs). Costs are weights when
// `weighted`, else 1. With `canonical`, the witness is the lexicographically
// smallest ascending id list among optimal ones.
SpannerOptimum min_cover_exact(const Graph& g, int k, const EdgeSubset& targets, const EdgeSubset& usable,
                               bool weighted, const OracleBudget& budget = {}, bool canonical = false);

// Whole-graph minimum k-spanner for a variant. Client-server instances throw
// InfeasibleInstance unless `skip_uncoverable`, which drops such edges.
SpannerOptimum min_spanner_exact(const Graph& g, int k, Variant variant, const OracleBudget& budget = {},
                                 bool canonical = false, bool skip_uncoverable = false);

// Same value on reduction graphs produced by gen_mvc_reduction, searching only
// the weight-0/1 canonical spanners (one per vertex subset of the source).
SpannerOptimum min_spanner_reduction_instance(const Graph& gs, const OracleBudget& budget = {});

struct VertexOptimum {
  std::size_t size = 0;
  std::vector<VertexId> witness;  // ascending
  std::uint64_t nodes = 0;
};

VertexOptimum min_vertex_cover_exact(const Graph& g, const OracleBudget& budget = {});
VertexOptimum min_dominating_set_exact(const Graph& g, const OracleBudget& budget = {});

struct SubsetDensity {
  std::vector<int> subset;  // ascending
  Ratio density;
};

// Densest vertex subset by enumeration: |E(S)| / w(S) with positive weights
// (all 1 when empty). Ties: smaller subsets, then lexicographically smaller.
SubsetDensity densest_subgraph_brute(int n, const std::vector<std::pair<int, int>>& edges,
                                     const std::vector<Weight>& weights = {});

// Exact directed star density of a directed star problem: for each in-leaf
// set, the best out-leaf set is a prefix by spanned count.
struct DirectedStarOptimum {
  Ratio density;
  std::vector<int> slots;
};
DirectedStarOptimum directed_star_density_exact(const StarProblem& p);

}  // namespace spandist
