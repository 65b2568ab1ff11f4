#pragma once

#include "spandist/graph.hpp"
#include "spandist/rational.hpp"
#include "spandist/sim.hpp"
#include "spandist/star.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace spandist {

// Simulator rounds per algorithm iteration: H-list exchange, uncovered-list
// exchange, density broadcast, density relay, candidacy, vote, commit.
inline constexpr std::uint32_t kSpannerRoundsPerIteration = 7;

struct SpannerOptions {
  Variant variant = Variant::undirected;
  std::uint64_t seed = 1;
  std::uint32_t max_rounds = 7 * 20000;
  unsigned threads = 1;
  bool record_messages = false;
};

struct SpannerResult {
  Variant variant = Variant::undirected;
  EdgeSubset h;            // final spanner
  EdgeSubset h0;           // weight-0 edges added up front (weighted variant)
  EdgeSubset h1;           // edges of added stars
  EdgeSubset h2;           // edges added at termination
  std::vector<EdgeId> uncoverable;  // client edges no server path can cover
  std::uint32_t iterations = 0;
  std::size_t components = 0;
  Trace trace;
};

// Runs the distributed algorithm in the simulator. The variant must fit the
// graph (directed graphs: directed; client-server graphs: client_server).
SpannerResult two_spanner(const Graph& g, const SpannerOptions& options);

struct IterationRecord {
  std::uint32_t iteration = 0;
  Rounded rho_max;
  std::int64_t phi = 0;      // sum of |C_v| over candidates at rho_max, iteration start
  std::int64_t phi_end = 0;  // same candidates' spanned edges still uncovered at the end
  std::int64_t active = 0;
  std::int64_t candidates = 0;
  std::int64_t stars_added = 0;
  std::int64_t terminated = 0;
};

struct CertificateReport {
  bool ok = true;
  std::vector<std::string> violations;  // first few, human readable
  std::size_t violation_count = 0;
  bool valid_spanner = false;
  Weight spanner_cost = 0;  // |H| or w(H)
  BigRational cost_sum;     // sum of cost(e)
  std::vector<Ratio> cost;  // per edge
  std::vector<IterationRecord> iterations;
  std::size_t distinct_rho_max = 0;
  std::size_t candidates_checked = 0;
  std::size_t stars_checked = 0;
  std::size_t votes_checked = 0;
  std::size_t subset_checks = 0;
  std::size_t fallback_hits = 0;
};

// Recomputes every cost(e) and law from the trace events and the graph, with
// no access to node state.
CertificateReport certificate_check(const Graph& g, const SpannerResult& result);

nlohmann::json to_json(const CertificateReport& r);

}  // namespace spandist
