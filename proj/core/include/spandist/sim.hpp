#pragma once

#include "spandist/graph.hpp"
#include "spandist/message.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace spandist {

struct IncidentEdge {
  EdgeId id = -1;
  VertexId neighbor = 0;
  bool outgoing = false;  // directed: the edge leaves this node
  Weight weight = 1;
  bool client = false;
  bool server = false;
};

// What a node knows at start-up: itself, n, and its own edges.
struct LocalView {
  VertexId self = 0;
  VertexId vertex_count = 0;
  GraphKind kind;
  std::vector<VertexId> neighbors;  // ascending, distinct
  std::vector<IncidentEdge> edges;  // ascending id
};

struct Message {
  VertexId from = 0;
  Bytes payload;
};

struct Event {
  std::uint32_t round = 0;
  VertexId node = 0;
  std::string kind;
  std::vector<std::int64_t> data;
};

class StepContext {
 public:
  StepContext(std::uint32_t round, std::span<const Message> inbox, std::mt19937_64& rng)
      : round_(round), inbox_(inbox), rng_(rng) {}

  std::uint32_t round() const { return round_; }
  std::span<const Message> inbox() const { return inbox_; }
  std::mt19937_64& rng() { return rng_; }

  void send(VertexId to, Bytes payload) { out_.push_back({to, std::move(payload)}); }
  void emit(std::string kind, std::vector<std::int64_t> data) {
    events_.push_back({round_, 0, std::move(kind), std::move(data)});
  }
  // Final local output. The node may still send in this step, never after.
  void output(std::vector<std::int64_t> values) { output_ = std::move(values); }

  struct Outgoing {
    VertexId to;
    Bytes payload;
  };
  std::vector<Outgoing>& sent() { return out_; }
  std::vector<Event>& events() { return events_; }
  std::optional<std::vector<std::int64_t>>& result() { return output_; }

 private:
  std::uint32_t round_;
  std::span<const Message> inbox_;
  std::mt19937_64& rng_;
  std::vector<Outgoing> out_;
  std::vector<Event> events_;
  std::optional<std::vector<std::int64_t>> output_;
};

class NodeProcess {
 public:
  virtual ~NodeProcess() = default;
  virtual void step(StepContext& ctx) = 0;
};

class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual std::unique_ptr<NodeProcess> spawn(const LocalView& view) const = 0;
};

struct RunOptions {
  std::uint64_t seed = 1;
  std::uint32_t max_rounds = 100000;
  unsigned threads = 1;
  bool record_messages = false;  // keep per-message records (needed for cut audits)
};

struct MessageRecord {
  std::uint32_t round = 0;
  VertexId from = 0;
  VertexId to = 0;
  std::uint32_t bits = 0;
};

struct RoundStats {
  std::uint32_t round = 0;
  std::uint64_t messages = 0;
  std::uint64_t bits = 0;
  std::uint32_t max_bits = 0;
};

struct Trace {
  std::uint64_t seed = 0;
  std::uint32_t rounds = 0;  // communication rounds: last round with a message, plus one
  std::uint32_t steps = 0;   // synchronous steps executed
  std::vector<RoundStats> per_round;  // rounds that carried messages
  std::vector<MessageRecord> messages;  // only when recorded
  std::vector<Event> events;
  std::vector<std::optional<std::vector<std::int64_t>>> outputs;
  std::map<std::string, std::vector<std::string>> metrics;  // series registered by the caller
  std::uint64_t digest = 0;  // FNV-1a over messages, events, outputs
  bool messages_recorded = false;
};

LocalView local_view(const Graph& g, VertexId v);

class RoundLimitExceeded : public std::runtime_error {
 public:
  RoundLimitExceeded(std::uint32_t limit, Trace partial)
      : std::runtime_error("round limit " + std::to_string(limit) + " reached before all nodes produced output"),
        partial_(std::move(partial)) {}
  const Trace& partial() const { return partial_; }

 private:
  Trace partial_;
};

// Per-node random stream, a function of (seed, id) only.
std::mt19937_64 node_rng(std::uint64_t seed, VertexId id);

Trace run(const Graph& g, const NodeProgram& program, const RunOptions& options);

struct Cut {
  std::vector<VertexId> side_a;
  std::vector<VertexId> side_b;
};

struct AuditReport {
  std::uint32_t max_message_bits = 0;
  std::uint64_t total_bits = 0;
  std::uint64_t messages = 0;
  std::uint32_t rounds = 0;
  std::optional<std::uint64_t> cut_bits;
  std::optional<std::uint64_t> cut_edges;
};

// Throws std::invalid_argument when the cut is not a partition of V, or
// when cut bits are asked of a trace without message records.
AuditReport audit(const Trace& trace, const Graph& g, const std::optional<Cut>& cut = std::nullopt);

nlohmann::json to_json(const AuditReport& a);
nlohmann::json trace_summary_json(const Trace& t);

}  // namespace spandist
