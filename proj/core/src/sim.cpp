#include "spandist/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <thread>

namespace spandist {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Fnv {
 public:
  void bytes(const std::uint8_t* p, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void word(std::uint64_t x) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(x >> (8 * i));
    bytes(b, 8);
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::mt19937_64 node_rng(std::uint64_t seed, VertexId id) {
  return std::mt19937_64(splitmix(splitmix(seed) ^ static_cast<std::uint64_t>(id) * 0xd1b54a32d192ed03ULL));
}

LocalView local_view(const Graph& g, VertexId v) {
  LocalView view;
  view.self = v;
  view.vertex_count = g.vertex_count();
  view.kind = g.kind();
  auto nb = g.neighbors(v);
  view.neighbors.assign(nb.begin(), nb.end());
  for (EdgeId e : g.incident(v)) {
    const Edge& x = g.edge(e);
    view.edges.push_back({e, g.other(e, v), g.directed() && x.u == v, x.weight, x.client, x.server});
  }
  return view;
}

Trace run(const Graph& g, const NodeProgram& program, const RunOptions& options) {
  if (options.max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::unique_ptr<NodeProcess>> procs(n);
  std::vector<std::mt19937_64> rngs;
  rngs.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    procs[v] = program.spawn(local_view(g, static_cast<VertexId>(v)));
    rngs.push_back(node_rng(options.seed, static_cast<VertexId>(v)));
  }
  std::vector<char> halted(n, 0);
  std::vector<std::vector<Message>> inbox(n), next(n);
  Trace trace;
  trace.seed = options.seed;
  trace.outputs.assign(n, std::nullopt);
  trace.messages_recorded = options.record_messages;
  Fnv digest;
  std::size_t live = n;
  const unsigned threads = std::max(1u, options.threads);

  for (std::uint32_t round = 0; live > 0; ++round) {
    if (round >= options.max_rounds) {
      trace.digest = digest.value();
      throw RoundLimitExceeded(options.max_rounds, std::move(trace));
    }
    std::vector<std::size_t> active;
    active.reserve(live);
    for (std::size_t v = 0; v < n; ++v)
      if (!halted[v]) active.push_back(v);
    std::vector<std::unique_ptr<StepContext>> ctx(active.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        std::size_t v = active[i];
        ctx[i] = std::make_unique<StepContext>(round, inbox[v], rngs[v]);
        procs[v]->step(*ctx[i]);
      }
    };
    if (threads == 1 || active.size() < 2) {
      work(0, active.size());
    } else {
      unsigned t = std::min<std::size_t>(threads, active.size());
      std::vector<std::exception_ptr> errors(t);
      std::vector<std::thread> pool;
      std::size_t chunk = (active.size() + t - 1) / t;
      for (unsigned w = 0; w < t; ++w) {
        std::size_t lo = w * chunk, hi = std::min(active.size(), lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
          try {
            work(lo, hi);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }

    // Merge in node-id order.
    RoundStats stats;
    stats.round = round;
    for (std::size_t i = 0; i < active.size(); ++i) {
      StepContext& c = *ctx[i];
      if (c.result()) {
        halted[active[i]] = 1;
        --live;
      }
    }
    for (std::size_t i = 0; i < active.size(); ++i) {
      const auto v = static_cast<VertexId>(active[i]);
      StepContext& c = *ctx[i];
      auto nb = g.neighbors(v);
      for (auto& out : c.sent()) {
        if (!std::binary_search(nb.begin(), nb.end(), out.to))
          throw std::logic_error("node " + std::to_string(v) + " sent to non-neighbour " + std::to_string(out.to));
        auto bits = static_cast<std::uint32_t>(8 * out.payload.size());
        ++stats.messages;
        stats.bits += bits;
        stats.max_bits = std::max(stats.max_bits, bits);
        digest.word(round);
        digest.word(static_cast<std::uint64_t>(v));
        digest.word(static_cast<std::uint64_t>(out.to));
        digest.word(out.payload.size());
        digest.bytes(out.payload.data(), out.payload.size());
        if (options.record_messages) trace.messages.push_back({round, v, out.to, bits});
        if (!halted[static_cast<std::size_t>(out.to)])
          next[static_cast<std::size_t>(out.to)].push_back({v, std::move(out.payload)});
      }
      for (auto& ev : c.events()) {
        ev.node = v;
        digest.word(round);
        digest.word(static_cast<std::uint64_t>(v));
        digest.bytes(reinterpret_cast<const std::uint8_t*>(ev.kind.data()), ev.kind.size());
        for (auto x : ev.data) digest.word(static_cast<std::uint64_t>(x));
        trace.events.push_back(std::move(ev));
      }
      if (c.result()) {
        digest.word(0xfeedULL);
        digest.word(static_cast<std::uint64_t>(v));
        for (auto x : *c.result()) digest.word(static_cast<std::uint64_t>(x));
        trace.outputs[active[i]] = std::move(c.result());
      }
    }
    if (stats.messages > 0) {
      trace.per_round.push_back(stats);
      trace.rounds = round + 1;
    }
    trace.steps = round + 1;
    for (std::size_t v = 0; v < n; ++v) {
      inbox[v].clear();
      std::swap(inbox[v], next[v]);
    }
  }
  trace.digest = digest.value();
  return trace;
}

AuditReport audit(const Trace& trace, const Graph& g, const std::optional<Cut>& cut) {
  AuditReport r;
  r.rounds = trace.rounds;
  for (const auto& s : trace.per_round) {
    r.max_message_bits = std::max(r.max_message_bits, s.max_bits);
    r.total_bits += s.bits;
    r.messages += s.messages;
  }
  if (!cut) return r;
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> side(n, -1);
  auto place = [&](const std::vector<VertexId>& vs, int s) {
    for (VertexId v : vs) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw std::invalid_argument("cut vertex out of range");
      if (side[static_cast<std::size_t>(v)] != -1) throw std::invalid_argument("cut sides overlap");
      side[static_cast<std::size_t>(v)] = s;
    }
  };
  place(cut->side_a, 0);
  place(cut->side_b, 1);
  if (std::find(side.begin(), side.end(), -1) != side.end())
    throw std::invalid_argument("cut does not cover every vertex");
  std::uint64_t edges = 0;
  for (const Edge& e : g.edges())
    if (side[static_cast<std::size_t>(e.u)] != side[static_cast<std::size_t>(e.v)]) ++edges;
  r.cut_edges = edges;
  if (!trace.messages_recorded && r.messages > 0)
    throw std::invalid_argument("cut audit needs a trace with message records");
  std::uint64_t bits = 0;
  for (const auto& m : trace.messages)
    if (side[static_cast<std::size_t>(m.from)] != side[static_cast<std::size_t>(m.to)]) bits += m.bits;
  r.cut_bits = bits;
  return r;
}

nlohmann::json to_json(const AuditReport& a) {
  nlohmann::json j;
  j["max_message_bits"] = a.max_message_bits;
  j["total_bits"] = a.total_bits;
  j["messages"] = a.messages;
  j["rounds"] = a.rounds;
  if (a.cut_bits) j["cut_bits"] = *a.cut_bits;
  if (a.cut_edges) j["cut_edges"] = *a.cut_edges;
  return j;
}

nlohmann::json trace_summary_json(const Trace& t) {
  nlohmann::json j;
  j["seed"] = t.seed;
  j["rounds"] = t.rounds;
  j["steps"] = t.steps;
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(t.digest));
  j["digest"] = hex;
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& s : t.per_round)
    rounds.push_back({{"round", s.round}, {"messages", s.messages}, {"bits", s.bits}, {"max_bits", s.max_bits}});
  j["per_round"] = rounds;
  j["metrics"] = t.metrics;
  std::size_t done = 0;
  for (const auto& o : t.outputs) done += o.has_value();
  j["nodes_with_output"] = done;
  j["events"] = t.events.size();
  return j;
}

}  // namespace spandist
