#pragma once

#include "spandist/graph.hpp"
#include "spandist/sim.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace spandist {

// Input strings are row-major bit strings of length l*l: a_ij is a[(i-1)*l + (j-1)].
bool strings_disjoint(const std::string& a, const std::string& b);

// Directed set-disjointness graph. Vertex numbering, 0-based, in this order:
//   x1_i, x2_i            (l + l)
//   y1_i, y2_i            (l + l)
//   x_ij row-major        (l*beta)
//   y_ij row-major        (l*beta)
//   y3_i                  (l)
// Accessors take 1-based indices.
struct DisjointnessGadget {
  Graph graph;
  int l = 0;
  int beta = 0;
  std::string a, b;
  EdgeSubset d;              // every (x_ij, y_rs)
  Cut partition;             // side_a = V_A, side_b = V_B = Y_1
  std::int64_t c = 7;
  std::int64_t t = 0;        // c * l * beta
  std::vector<std::string> labels;
  std::map<std::string, std::vector<VertexId>> groups;

  VertexId x1(int i) const { return i - 1; }
  VertexId x2(int i) const { return l + i - 1; }
  VertexId y1(int i) const { return 2 * l + i - 1; }
  VertexId y2(int i) const { return 3 * l + i - 1; }
  VertexId x(int i, int j) const { return 4 * l + (i - 1) * beta + j - 1; }
  VertexId y(int i, int j) const { return 4 * l + l * beta + (i - 1) * beta + j - 1; }
  VertexId y3(int i) const { return 4 * l + 2 * l * beta + i - 1; }
};

// Throws std::invalid_argument when l or beta < 1 or a string is not l*l bits.
DisjointnessGadget gen_disjointness_gadget(int l, int beta, const std::string& a, const std::string& b);

struct GadgetReport {
  bool ok = true;
  std::vector<std::string> violations;
  bool disjoint = false;
  std::size_t pairs_checked = 0;       // (x_ij, y_rs) path checks
  std::size_t intersecting = 0;        // index pairs with a_ir = b_ir = 1
  std::size_t forced_d_edges = 0;
  std::size_t cut_edges = 0;
  std::size_t sparse_spanner_size = 0;  // |E \ D|, when disjoint
  std::int64_t size_bound = 0;          // 7 * l * max(l, beta)
};

// Checks the structural invariants, the non-D path law for every (x_ij, y_rs),
// the sparse spanner on disjoint inputs, and the forced D edge counts
// otherwise. Throws std::invalid_argument when k < 5.
GadgetReport verify_gadget_claims(const DisjointnessGadget& g, int k);

// Weighted gadget: D edges weigh 1, everything else 0. Numbering:
//   x1_i, x2_i, y1_i, y2_i, x_i, y_i, then (undirected, k > 4) the path
//   vertices y3_i .. y{k-2}_i grouped by i.
struct WeightedGadget {
  Graph graph;
  int l = 0;
  int k = 0;
  bool directed = true;
  std::string a, b;
  EdgeSubset d;
  Cut partition;
  std::vector<std::string> labels;
  std::map<std::string, std::vector<VertexId>> groups;

  VertexId x1(int i) const { return i - 1; }
  VertexId x2(int i) const { return l + i - 1; }
  VertexId y1(int i) const { return 2 * l + i - 1; }
  VertexId y2(int i) const { return 3 * l + i - 1; }
  VertexId x(int i) const { return 4 * l + i - 1; }
  VertexId y(int i) const { return 5 * l + i - 1; }
};

// Throws std::invalid_argument when k < 4, l < 1, or a string is not l*l bits.
WeightedGadget gen_weighted_gadget(int l, int k, bool directed, const std::string& a, const std::string& b);

struct WeightedGadgetReport {
  bool ok = true;
  std::vector<std::string> violations;
  bool disjoint = false;
  bool zero_cost_spanner = false;
  std::vector<std::pair<int, int>> blocked;  // (i, j) with no 0-weight path x_i -> y_j, 1-based
};

WeightedGadgetReport verify_weighted_gadget(const WeightedGadget& g);

// MVC to weighted 2-spanner. Source vertex v becomes 3v, 3v+1, 3v+2 (v1, v2,
// v3) with w(v1v2) = 1 and w(v1v3) = w(v2v3) = 0. Source edge {v, u}, v < u,
// adds v1u1 and v2u2 (weight 0) and v1u2 (weight 2). The directed form uses
// arcs (v1,v2), (v1,v3), (v3,v2) and both directions of v1u1 and v2u2.
struct ReductionGadget {
  Graph source;
  Graph gs;
  bool directed = false;
};

// Throws std::invalid_argument for a directed or weighted source.
ReductionGadget gen_mvc_reduction(const Graph& g, bool directed = false);

// H_C: all weight-0 edges plus v1v2 for each v in the cover. Throws
// std::invalid_argument when c is not a vertex cover.
EdgeSubset cover_to_spanner(const ReductionGadget& r, const std::vector<VertexId>& cover);

// H': every weight-2 edge v1u2 is swapped for v1v2 and u1u2.
EdgeSubset canonicalize_spanner(const ReductionGadget& r, const EdgeSubset& h);

// C_H from H'. Throws std::invalid_argument when h is not a 2-spanner of G_S.
std::vector<VertexId> spanner_to_cover(const ReductionGadget& r, const EdgeSubset& h);

nlohmann::json describe(const DisjointnessGadget& g);
nlohmann::json describe(const WeightedGadget& g);
nlohmann::json describe(const ReductionGadget& r);
nlohmann::json to_json(const GadgetReport& r);
nlohmann::json to_json(const WeightedGadgetReport& r);

}  // namespace spandist
