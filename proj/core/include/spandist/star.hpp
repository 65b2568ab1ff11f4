#pragma once

#include "spandist/graph.hpp"
#include "spandist/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spandist {

enum class Variant { undirected, directed, weighted, client_server };

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);
// The variant a graph's flags call for.
Variant natural_variant(const Graph& g);

struct Star {
  VertexId center = 0;
  std::vector<EdgeId> edges;  // ascending
  bool operator==(const Star&) const = default;
};

struct DensityValue {
  std::vector<EdgeId> spanned;  // C_S, ascending
  std::int64_t num = 0;         // |C_S|
  Weight den = 0;               // |S| or w(S)
  Ratio rho;
  Rounded rounded;
};

// One candidate star edge around a center. Directed: one slot per arc, with
// `outgoing` telling whether it leaves the center.
struct StarSlot {
  EdgeId edge = -1;
  VertexId leaf = 0;
  Weight cost = 1;
  bool outgoing = false;
};

// An uncovered edge 2-spanned when both slots are chosen. Directed: `in` is
// the arc leaf->center, `out` the arc center->leaf.
struct SpannablePair {
  int in = 0;
  int out = 0;
};

// Everything the star computations need to know about one center. Slots are
// sorted by (leaf, outgoing).
struct StarProblem {
  VertexId center = 0;
  bool directed = false;
  std::vector<StarSlot> slots;
  std::vector<SpannablePair> pairs;
};

StarProblem make_star_problem(const Graph& g, VertexId v, const EdgeSubset& uncovered, Variant variant);
// Spanned target edges of a slot set, looked up in the host graph.
std::vector<EdgeId> spanned_edges(const Graph& g, const StarProblem& p, const std::vector<int>& slots);

struct SlotChoice {
  std::vector<int> slots;  // ascending slot indices
  std::int64_t spanned = 0;
  Weight cost = 0;
  Ratio density;
  Ratio undirected_density;  // directed only: optimum of the undirected reduction
};

enum class ChoiceKind { fresh, kept, rebuilt };
std::string to_string(ChoiceKind k);

struct ChoiceResult {
  SlotChoice choice;
  ChoiceKind kind = ChoiceKind::fresh;
};

// Thrown when no star inside the previous one meets the threshold. The
// subset law says this cannot happen; reaching it means a bug.
class StarChoiceFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

SlotChoice evaluate_slots(const StarProblem& p, std::vector<int> slots);
// Densest star inside `pool` (a slot mask; empty mask = all slots). Exact for
// undirected modes; directed returns the materialized 2-approximation.
SlotChoice densest_slots(const StarProblem& p, const std::vector<char>& pool, bool tie_break = true);
// Star choice with growth. `prev` is the previous star when the rounded
// density is unchanged since the previous candidacy.
ChoiceResult choose_slots(const StarProblem& p, const std::vector<int>* prev, Rounded now);

// Graph-level wrappers.
DensityValue density_of(const Graph& g, const Star& star, const EdgeSubset& uncovered, Variant variant);

struct StarResult {
  Star star;
  DensityValue density;
};
StarResult densest_star(const Graph& g, VertexId v, const EdgeSubset& uncovered,
                        const std::optional<EdgeSubset>& pool, Variant variant);

struct PreviousStar {
  Star star;
  Rounded rounded;
};
struct ChosenStar {
  Star star;
  ChoiceKind kind = ChoiceKind::fresh;
};
ChosenStar choose_star(const Graph& g, VertexId v, const EdgeSubset& uncovered_now,
                       const std::optional<PreviousStar>& prev, Rounded now, Variant variant);

struct DirectedEstimate {
  Star star;
  Ratio estimate;    // true directed density of `star`
  Ratio undirected;  // optimum of the undirected reduction
};
DirectedEstimate directed_density_estimate(const Graph& g, VertexId v, const EdgeSubset& uncovered);

}  // namespace spandist
