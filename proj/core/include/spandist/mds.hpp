#pragma once

#include "spandist/graph.hpp"
#include "spandist/rational.hpp"
#include "spandist/sim.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace spandist {

// Status exchange, density, relay, candidacy, vote, join.
inline constexpr std::uint32_t kMdsRoundsPerIteration = 6;

struct MdsOptions {
  std::uint64_t seed = 1;
  std::uint32_t max_rounds = 6 * 20000;
  unsigned threads = 1;
  bool record_messages = false;
};

struct MdsResult {
  std::vector<VertexId> dominating;  // ascending
  std::uint32_t iterations = 0;
  Trace trace;
};

MdsResult mds(const Graph& g, const MdsOptions& options);

bool is_dominating(const Graph& g, const std::vector<VertexId>& d);

struct MdsCertificate {
  bool ok = true;
  std::vector<std::string> violations;
  std::size_t violation_count = 0;
  bool dominating = false;
  std::vector<Ratio> cost;  // per vertex
  BigRational cost_sum;
  std::vector<Rounded> rho_max;  // per iteration
  std::size_t distinct_rho_max = 0;
};

// Replays the trace: votes, join rule, candidate locality, cost(v) and
// |D| <= 8 * sum cost(v).
MdsCertificate mds_check(const Graph& g, const MdsResult& result);

nlohmann::json to_json(const MdsCertificate& c);

}  // namespace spandist
