#pragma once

#include "spandist/graph.hpp"
#include "spandist/rational.hpp"

#include <utility>
#include <vector>

namespace spandist {

// Vertex-weighted densest subgraph: pick U maximizing |E(U)| / cost(U).
// Zero-cost vertices are always included; a set of cost 0 has density 0.
struct DensestInput {
  std::vector<Weight> cost;
  std::vector<std::pair<int, int>> edges;  // distinct, no loops
  std::vector<VertexId> label;             // for the lexicographic tie-break
};

struct DensestOutput {
  std::vector<int> members;  // ascending by label
  std::int64_t inside = 0;   // |E(U)|
  Weight cost = 0;
  Ratio density;
};

// Exact optimum by parametric min cut. With tie_break, the smallest optimal
// set is returned (then lexicographically smallest labels); otherwise any
// optimal set. With no edges the zero-cost vertices are returned, or the
// lowest-label vertex when there are none.
DensestOutput densest_subset(const DensestInput& in, bool tie_break = true);

// Optimal density only.
Ratio densest_value(const DensestInput& in);

}  // namespace spandist
