#pragma once

#include "spandist/exact.hpp"
#include "spandist/graph.hpp"
#include "spandist/rational.hpp"
#include "spandist/sim.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace spandist {

struct BallSpanner {
  Weight size = 0;
  EdgeSubset witness;
  std::size_t targets = 0;  // uncovered edges inside the ball
};

// Exact cheapest set of edges giving every uncovered target edge inside
// B_d(v) a path of length <= k. Candidate edges are those of B_{d+k}(v).
// Balls use undirected hop distance; paths respect direction.
BallSpanner ball_spanner_size(const Graph& g, VertexId v, int d, int k, const EdgeSubset& uncovered,
                              const OracleBudget& budget = {});

struct PtasOptions {
  int k = 2;
  Ratio epsilon = Ratio(1);
  std::uint64_t seed = 1;
  unsigned threads = 1;
  OracleBudget budget;
};

struct PtasStep {
  VertexId v = 0;
  int radius = 0;          // r_i
  int failed = 0;          // radius increments before the test passed
  Weight g_inner = 0;      // g(v, r_i)
  Weight g_outer = 0;      // g(v, r_i + 2k), also the cost added
  std::vector<EdgeId> inner_uncovered;  // E_i
};

struct PtasResult {
  EdgeSubset h;
  std::vector<VertexId> order;
  std::vector<PtasStep> steps;
  int increment_cap = 0;  // ceil(log_{1+eps}(n^2 W))
  std::vector<EdgeId> uncoverable;  // client edges with no server path, left out
  bool ok = true;
  std::vector<std::string> violations;
};

// Smallest L with (1+eps)^L >= n^2 * W, W the ratio of the largest to the
// smallest positive weight (1 when unweighted).
int radius_increment_cap(const Graph& g, const Ratio& epsilon);

// Radius of the power graph used for the decomposition: 4k*L + 6k + 1.
int power_radius(const Graph& g, int k, const Ratio& epsilon);

// Processes vertices in `order` (id order when empty). Checks the radius cap
// and the separation of the E_i sets; failures land in `violations`.
PtasResult ptas_sequential(const Graph& g, int k, const Ratio& epsilon, std::vector<VertexId> order = {},
                           const OracleBudget& budget = {});

// Undirected graph on the same vertices joining pairs at hop distance <= r.
Graph power_graph(const Graph& g, int r);

struct Decomposition {
  int r = 1;
  std::vector<std::int64_t> cluster;  // phase * n + center
  std::vector<int> color;
  int colors = 0;
  int phases = 0;            // scheduled phases
  int radius_cap = 0;        // largest radius a center may draw
  Trace trace;               // the run on G^r
  std::uint64_t base_rounds = 0;  // trace.rounds * r
};

// Randomized low-diameter decomposition of G^r as a node program. Throws
// std::runtime_error when a vertex stays uncolored after the scheduled phases.
Decomposition network_decomposition(const Graph& g, int r, std::uint64_t seed, unsigned threads = 1);

struct DecompositionReport {
  bool ok = true;
  std::vector<std::string> violations;
  int colors = 0;
  int color_bound = 0;     // 4 * (ceil(log2 n) + 1)
  int max_weak_diameter = 0;
  int diameter_bound = 0;  // 2 * radius_cap
};

DecompositionReport check_decomposition(const Graph& g, const Decomposition& d);

struct DistributedPtasResult {
  PtasResult run;
  Decomposition decomposition;
  bool matches_sequential = false;
  std::uint64_t gather_rounds = 0;  // per color: (largest cluster weak diameter in G^r + 1) * r
  std::uint64_t base_rounds = 0;    // decomposition + gathering
};

// Decomposes G^r, then processes colors in increasing order; clusters of one
// color run the sequential steps of their vertices against a shared snapshot.
DistributedPtasResult ptas_distributed(const Graph& g, const PtasOptions& options);

nlohmann::json to_json(const PtasResult& r);
nlohmann::json to_json(const DecompositionReport& r);

}  // namespace spandist
