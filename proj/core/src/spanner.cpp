#include "spandist/spanner.hpp"

#include "spandist/verify.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace spandist {

namespace {

enum Tag : std::uint64_t { kHList = 1, kUncov, kDens, kRelay, kStar, kHAdd, kVote, kCommit };

// Phases inside one iteration.
enum Phase : std::uint32_t { kExchangeH, kExchangeUncovered, kDensity, kRelayDensity, kDecide, kVoteStep, kCommitStep };

bool intersects(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

bool contains(const std::vector<VertexId>& xs, VertexId x) { return std::binary_search(xs.begin(), xs.end(), x); }

std::uint64_t rank_bound(VertexId n) {
  auto x = static_cast<std::uint64_t>(std::max<VertexId>(n, 2));
  if (x >= (1u << 15)) return std::uint64_t{1} << 62;
  return x * x * x * x;
}

struct Neighbour {
  VertexId id = 0;
  EdgeId out = -1;  // undirected: the edge; directed: arc self->id
  EdgeId in = -1;   // undirected: the edge; directed: arc id->self
  Weight w_out = 0, w_in = 0;
  bool target_out = false, target_in = false;
  bool server = false;
  int slot_out = -1, slot_in = -1;
  bool h_out = false, h_in = false;
  bool unc_out = false, unc_in = false;
  bool alive = false;
  std::vector<VertexId> hl_out, hl_in;
};

class SpannerNode final : public NodeProcess {
 public:
  SpannerNode(const LocalView& view, Variant variant)
      : self_(view.self), n_(view.vertex_count), variant_(variant), directed_(variant == Variant::directed) {
    nb_.resize(view.neighbors.size());
    for (std::size_t i = 0; i < nb_.size(); ++i) nb_[i].id = view.neighbors[i];
    const bool cs = variant == Variant::client_server;
    for (const IncidentEdge& e : view.edges) {
      Neighbour& x = nb_[index(e.neighbor)];
      Weight w = variant == Variant::weighted ? e.weight : 1;
      wmax_ = std::max(wmax_, e.weight);
      bool target = !cs || e.client;
      bool zero = variant == Variant::weighted && e.weight == 0;
      if (!directed_ || e.outgoing) {
        x.out = e.id;
        x.w_out = w;
        x.target_out = target;
        x.h_out = zero;
      }
      if (!directed_ || !e.outgoing) {
        x.in = e.id;
        x.w_in = w;
        x.target_in = target;
        x.h_in = zero;
      }
      x.server = !cs || e.server;
    }
    // Slots sorted by (leaf, outgoing), matching make_star_problem.
    problem_.center = self_;
    problem_.directed = directed_;
    for (Neighbour& x : nb_) {
      if (!x.server) continue;
      if (directed_) {
        if (x.in >= 0) {
          x.slot_in = static_cast<int>(problem_.slots.size());
          problem_.slots.push_back({x.in, x.id, 1, false});
        }
        if (x.out >= 0) {
          x.slot_out = static_cast<int>(problem_.slots.size());
          problem_.slots.push_back({x.out, x.id, 1, true});
        }
      } else {
        x.slot_in = x.slot_out = static_cast<int>(problem_.slots.size());
        problem_.slots.push_back({x.out, x.id, x.w_out, false});
      }
    }
    wmax2_ = wmax_;
  }

  void step(StepContext& ctx) override {
    iteration_ = static_cast<std::int64_t>(ctx.round() / kSpannerRoundsPerIteration);
    switch (ctx.round() % kSpannerRoundsPerIteration) {
      case kExchangeH: exchange_h(ctx); break;
      case kExchangeUncovered: exchange_uncovered(ctx); break;
      case kDensity: density(ctx); break;
      case kRelayDensity: relay(ctx); break;
      case kDecide: decide(ctx); break;
      case kVoteStep: vote(ctx); break;
      case kCommitStep: commit(ctx); break;
    }
  }

 private:
  std::size_t index(VertexId v) const {
    auto it = std::lower_bound(nb_.begin(), nb_.end(), v, [](const Neighbour& a, VertexId b) { return a.id < b; });
    if (it == nb_.end() || it->id != v) throw std::logic_error("message from a non-neighbour");
    return static_cast<std::size_t>(it - nb_.begin());
  }
  int find(VertexId v) const {
    auto it = std::lower_bound(nb_.begin(), nb_.end(), v, [](const Neighbour& a, VertexId b) { return a.id < b; });
    return it == nb_.end() || it->id != v ? -1 : static_cast<int>(it - nb_.begin());
  }

  // bit0: the receiver's arc towards the sender, bit1: the sender's arc towards the receiver.
  void mark(Neighbour& x, std::uint64_t flags) {
    if (!directed_) {
      x.h_out = x.h_in = true;
      return;
    }
    if (flags & 1) x.h_out = true;
    if (flags & 2) x.h_in = true;
  }

  void send_alive(StepContext& ctx, const Bytes& payload) {
    for (const Neighbour& x : nb_)
      if (x.alive) ctx.send(x.id, payload);
  }

  void exchange_h(StepContext& ctx) {
    for (const Message& m : ctx.inbox()) {
      MessageReader r(m.payload);
      if (r.get() != kCommit) throw std::logic_error("unexpected message in H exchange");
      mark(nb_[index(m.from)], r.get());
    }
    std::vector<VertexId> out, in;
    for (const Neighbour& x : nb_) {
      if (x.h_out) out.push_back(x.id);
      if (x.h_in) in.push_back(x.id);
    }
    MessageWriter w;
    w.put(kHList).put_ascending(out);
    if (directed_) w.put_ascending(in);
    Bytes payload = w.take();
    for (const Neighbour& x : nb_) ctx.send(x.id, payload);
    h_out_ = std::move(out);
    h_in_ = std::move(in);
  }

  void exchange_uncovered(StepContext& ctx) {
    for (Neighbour& x : nb_) {
      x.alive = false;
      x.hl_out.clear();
      x.hl_in.clear();
    }
    for (const Message& m : ctx.inbox()) {
      MessageReader r(m.payload);
      if (r.get() != kHList) throw std::logic_error("unexpected message in uncovered exchange");
      Neighbour& x = nb_[index(m.from)];
      x.alive = true;
      x.hl_out = r.get_ascending<VertexId>();
      x.hl_in = directed_ ? r.get_ascending<VertexId>() : x.hl_out;
    }
    std::vector<VertexId> list;
    for (Neighbour& x : nb_) {
      x.unc_out = x.unc_in = false;
      // A halted neighbour covered all its edges before halting.
      if (!x.alive) continue;
      if (x.out >= 0 && x.target_out) x.unc_out = !x.h_out && !intersects(h_out_, x.hl_in);
      if (x.in >= 0 && x.target_in) x.unc_in = !x.h_in && !intersects(x.hl_out, h_in_);
      if (x.unc_out) list.push_back(x.id);
    }
    MessageWriter w;
    w.put(kUncov).put_ascending(list);
    send_alive(ctx, w.take());
  }

  void density(StepContext& ctx) {
    problem_.pairs.clear();
    for (const Message& m : ctx.inbox()) {
      MessageReader r(m.payload);
      if (r.get() != kUncov) throw std::logic_error("unexpected message in density step");
      const std::size_t iu = index(m.from);
      for (VertexId w : r.get_ascending<VertexId>()) {
        if (w == self_ || (!directed_ && w < m.from)) continue;
        int iw = find(w);
        if (iw < 0) continue;
        int a = nb_[iu].slot_in, b = nb_[static_cast<std::size_t>(iw)].slot_out;
        if (a >= 0 && b >= 0) problem_.pairs.push_back({a, b});
      }
    }
    std::sort(problem_.pairs.begin(), problem_.pairs.end(),
              [](const SpannablePair& x, const SpannablePair& y) { return x.in != y.in ? x.in < y.in : x.out < y.out; });
    bool same = problem_.pairs.size() == cached_pairs_.size() &&
                std::equal(problem_.pairs.begin(), problem_.pairs.end(), cached_pairs_.begin(),
                           [](const SpannablePair& x, const SpannablePair& y) { return x.in == y.in && x.out == y.out; });
    if (!same) {
      cached_pairs_ = problem_.pairs;
      cached_rho_ = problem_.pairs.empty() ? Ratio(0) : densest_slots(problem_, {}, directed_).density;
    }
    rho_ = cached_rho_;
    if (directed_) {
      // Capped so the estimate never rises.
      if (cap_ && *cap_ < rho_) rho_ = *cap_;
      cap_ = rho_;
    }
    rounded_ = Rounded::of(rho_);
    ctx.emit("density", {iteration_, static_cast<std::int64_t>(rounded_.code()), rho_.num(), rho_.den()});
    MessageWriter w;
    w.put(kDens).put(rounded_.code()).put(static_cast<std::uint64_t>(rho_.num()))
        .put(static_cast<std::uint64_t>(rho_.den())).put(static_cast<std::uint64_t>(wmax_));
    send_alive(ctx, w.take());
  }

  struct Maxima {
    Rounded rounded;
    Ratio rho;
    Weight w = 0;
  };

  Maxima gather(StepContext& ctx, Tag expected) {
    Maxima mx{rounded_, rho_, expected == kDens ? wmax_ : wmax2_};
    for (const Message& m : ctx.inbox()) {
      MessageReader r(m.payload);
      if (r.get() != expected) throw std::logic_error("unexpected message in density relay");
      Rounded rd = Rounded::from_code(r.get());
      auto num = static_cast<std::int64_t>(r.get());
      auto den = static_cast<std::int64_t>(r.get());
      auto w = static_cast<Weight>(r.get());
      mx.rounded = std::max(mx.rounded, rd);
      mx.rho = std::max(mx.rho, Ratio(num, den));
      mx.w = std::max(mx.w, w);
    }
    return mx;
  }

  void relay(StepContext& ctx) {
    near_ = gather(ctx, kDens);
    MessageWriter w;
    w.put(kRelay).put(near_.rounded.code()).put(static_cast<std::uint64_t>(near_.rho.num()))
        .put(static_cast<std::uint64_t>(near_.rho.den())).put(static_cast<std::uint64_t>(near_.w));
    send_alive(ctx, w.take());
  }

  void decide(StepContext& ctx) {
    Maxima far = gather(ctx, kRelay);
    wmax2_ = std::max(wmax2_, far.w);
    bool unreachable = false;  // threshold is +infinity
    Ratio threshold(1);
    if (variant_ == Variant::client_server) threshold = Ratio(1, 2);
    if (variant_ == Variant::weighted) {
      if (wmax2_ == 0) unreachable = true;
      else threshold = Ratio(1, wmax2_);
    }
    candidate_ = false;
    if (unreachable || far.rho < threshold) {
      terminate(ctx);
      return;
    }
    if (!(rounded_ >= far.rounded && rho_ >= threshold)) {
      had_candidacy_ = false;
      return;
    }
    std::vector<int> prev;
    bool use_prev = had_candidacy_ && prev_rounded_ == rounded_;
    if (use_prev)
      for (EdgeId e : prev_edges_) {
        auto it = std::find_if(problem_.slots.begin(), problem_.slots.end(), [&](const StarSlot& s) { return s.edge == e; });
        prev.push_back(static_cast<int>(it - problem_.slots.begin()));
      }
    ChoiceResult choice = choose_slots(problem_, use_prev ? &prev : nullptr, rounded_);
    candidate_ = true;
    star_slots_ = choice.choice.slots;
    spanned_ = choice.choice.spanned;
    std::uniform_int_distribution<std::uint64_t> dist(1, rank_bound(n_));
    rank_ = dist(ctx.rng());

    std::vector<VertexId> in_leaves, out_leaves;
    std::vector<EdgeId> edges;
    for (int s : star_slots_) {
      const StarSlot& x = problem_.slots[static_cast<std::size_t>(s)];
      edges.push_back(x.edge);
      if (!directed_ || !x.outgoing) in_leaves.push_back(x.leaf);
      if (directed_ && x.outgoing) out_leaves.push_back(x.leaf);
    }
    std::sort(edges.begin(), edges.end());
    MessageWriter w;
    w.put(kStar).put(rank_).put_ascending(in_leaves);
    if (directed_) w.put_ascending(out_leaves);
    send_alive(ctx, w.take());

    std::vector<std::int64_t> data{iteration_, static_cast<std::int64_t>(rounded_.code()), spanned_,
                                   choice.choice.cost, static_cast<std::int64_t>(rank_),
                                   static_cast<std::int64_t>(choice.kind)};
    data.insert(data.end(), edges.begin(), edges.end());
    ctx.emit("candidate", std::move(data));
    had_candidacy_ = true;
    prev_rounded_ = rounded_;
    prev_edges_ = std::move(edges);
  }

  void terminate(StepContext& ctx) {
    std::vector<std::int64_t> data{iteration_};
    for (Neighbour& x : nb_) {
      std::uint64_t flags = 0;
      if (x.unc_out && x.server) {
        x.h_out = true;
        if (!directed_) x.h_in = true;
        data.push_back(x.out);
        flags |= 2;
      }
      if (directed_ && x.unc_in) {
        x.h_in = true;
        data.push_back(x.in);
        flags |= 1;
      }
      if (flags) {
        MessageWriter w;
        w.put(kHAdd).put(flags);
        ctx.send(x.id, w.take());
      }
    }
    std::sort(data.begin() + 1, data.end());
    ctx.emit("terminate", std::move(data));
    std::vector<std::int64_t> out;
    for (const Neighbour& x : nb_) {
      if (x.h_out) out.push_back(x.out);
      if (directed_ && x.h_in) out.push_back(x.in);
    }
    std::sort(out.begin(), out.end());
    ctx.output(std::move(out));
  }

  void vote(StepContext& ctx) {
    struct Offer {
      std::uint64_t rank;
      VertexId center;
      std::vector<VertexId> in, out;
    };
    std::vector<Offer> offers;
    for (const Message& m : ctx.inbox()) {
      MessageReader r(m.payload);
      auto tag = r.get();
      if (tag == kHAdd) {
        mark(nb_[index(m.from)], r.get());
        continue;
      }
      if (tag != kStar) throw std::logic_error("unexpected message in vote step");
      Offer o;
      o.rank = r.get();
      o.center = m.from;
      o.in = r.get_ascending<VertexId>();
      o.out = directed_ ? r.get_ascending<VertexId>() : o.in;
      offers.push_back(std::move(o));
    }
    if (offers.empty()) return;
    std::map<VertexId, std::vector<VertexId>> ballots;
    for (const Neighbour& x : nb_) {
      if (!x.unc_out || (!directed_ && x.id < self_)) continue;
      const Offer* best = nullptr;
      for (const Offer& o : offers) {
        if (!contains(o.in, self_) || !contains(o.out, x.id)) continue;
        if (!best || std::tie(o.rank, o.center) < std::tie(best->rank, best->center)) best = &o;
      }
      if (!best) continue;
      ballots[best->center].push_back(x.id);
      ctx.emit("vote", {iteration_, x.out, best->center});
    }
    for (auto& [c, ws] : ballots) {
      MessageWriter w;
      w.put(kVote).put_ascending(ws);
      ctx.send(c, w.take());
    }
  }

  void commit(StepContext& ctx) {
    std::int64_t votes = 0;
    for (const Message& m : ctx.inbox()) {
      MessageReader r(m.payload);
      if (r.get() != kVote) throw std::logic_error("unexpected message in commit step");
      votes += static_cast<std::int64_t>(r.get_ascending<VertexId>().size());
    }
    if (!candidate_ || 8 * votes < spanned_) return;
    std::map<VertexId, std::uint64_t> flags;
    std::vector<std::int64_t> data{iteration_, votes, spanned_};
    for (int s : star_slots_) {
      const StarSlot& x = problem_.slots[static_cast<std::size_t>(s)];
      Neighbour& nb = nb_[index(x.leaf)];
      data.push_back(x.edge);
      if (!directed_) {
        nb.h_out = nb.h_in = true;
        flags[x.leaf] |= 1;
      } else if (x.outgoing) {
        nb.h_out = true;
        flags[x.leaf] |= 2;
      } else {
        nb.h_in = true;
        flags[x.leaf] |= 1;
      }
    }
    std::sort(data.begin() + 3, data.end());
    for (auto [leaf, f] : flags) {
      MessageWriter w;
      w.put(kCommit).put(f);
      ctx.send(leaf, w.take());
    }
    ctx.emit("star", std::move(data));
  }

  VertexId self_;
  VertexId n_;
  Variant variant_;
  bool directed_;
  std::vector<Neighbour> nb_;
  StarProblem problem_;
  std::vector<VertexId> h_out_, h_in_;
  Weight wmax_ = 0, wmax2_ = 0;
  std::int64_t iteration_ = 0;

  std::vector<SpannablePair> cached_pairs_;
  Ratio cached_rho_;
  std::optional<Ratio> cap_;
  Ratio rho_;
  Rounded rounded_;
  Maxima near_;

  bool candidate_ = false;
  std::vector<int> star_slots_;
  std::int64_t spanned_ = 0;
  std::uint64_t rank_ = 0;

  bool had_candidacy_ = false;
  Rounded prev_rounded_;
  std::vector<EdgeId> prev_edges_;
};

class SpannerProgram final : public NodeProgram {
 public:
  explicit SpannerProgram(Variant v) : variant_(v) {}
  std::unique_ptr<NodeProcess> spawn(const LocalView& view) const override {
    return std::make_unique<SpannerNode>(view, variant_);
  }

 private:
  Variant variant_;
};

void check_fit(const Graph& g, Variant variant) {
  bool ok = true;
  switch (variant) {
    case Variant::directed: ok = g.directed(); break;
    case Variant::client_server: ok = !g.directed() && g.client_server(); break;
    default: ok = !g.directed() && !g.client_server(); break;
  }
  if (!ok) throw std::invalid_argument("variant " + to_string(variant) + " does not fit the graph");
}

}  // namespace

SpannerResult two_spanner(const Graph& g, const SpannerOptions& options) {
  check_fit(g, options.variant);
  SpannerProgram program(options.variant);
  RunOptions ro;
  ro.seed = options.seed;
  ro.max_rounds = options.max_rounds;
  ro.threads = options.threads;
  ro.record_messages = options.record_messages;

  SpannerResult r;
  r.variant = options.variant;
  r.trace = run(g, program, ro);
  const auto m = static_cast<std::size_t>(g.edge_count());
  r.h = r.h0 = r.h1 = r.h2 = EdgeSubset(m);
  for (const auto& out : r.trace.outputs)
    if (out)
      for (auto e : *out) r.h.set(static_cast<EdgeId>(e));
  if (options.variant == Variant::weighted)
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (g.edge(e).weight == 0) r.h0.set(e);

  std::map<std::int64_t, std::pair<std::string, std::int64_t>> per_iter;  // rho_max, candidates
  std::map<std::int64_t, std::int64_t> stars;
  std::int64_t last = -1;
  for (const Event& ev : r.trace.events) {
    const std::int64_t it = ev.data.at(0);
    last = std::max(last, it);
    if (ev.kind == "star") {
      for (std::size_t i = 3; i < ev.data.size(); ++i) r.h1.set(static_cast<EdgeId>(ev.data[i]));
      ++stars[it];
    } else if (ev.kind == "terminate") {
      for (std::size_t i = 1; i < ev.data.size(); ++i) r.h2.set(static_cast<EdgeId>(ev.data[i]));
    } else if (ev.kind == "candidate") {
      ++per_iter[it].second;
    }
  }
  r.iterations = static_cast<std::uint32_t>(last + 1);
  if (g.client_server()) {
    auto coverable = coverable_client_edges(g, 2);
    auto t = g.targets();
    t -= coverable;
    r.uncoverable = t.ids();
  }
  r.components = g.component_count();

  std::vector<Rounded> rho_max(r.iterations);
  for (const Event& ev : r.trace.events)
    if (ev.kind == "density") {
      auto& x = rho_max[static_cast<std::size_t>(ev.data[0])];
      x = std::max(x, Rounded::from_code(static_cast<std::uint64_t>(ev.data[1])));
    }
  auto& metrics = r.trace.metrics;
  for (std::uint32_t i = 0; i < r.iterations; ++i) {
    metrics["rho_max"].push_back(rho_max[i].str());
    metrics["candidates"].push_back(std::to_string(per_iter[i].second));
    metrics["stars_added"].push_back(std::to_string(stars[i]));
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct CandidateRecord {
  Rounded rounded;
  std::int64_t spanned = 0;
  std::int64_t cost = 0;
  std::uint64_t rank = 0;
  ChoiceKind kind = ChoiceKind::fresh;
  std::vector<EdgeId> edges;
  std::vector<EdgeId> covers;  // recomputed C_v
};

struct StarRecord {
  std::int64_t votes = 0;
  std::int64_t spanned = 0;
  std::vector<EdgeId> edges;
};

struct Iteration {
  std::map<VertexId, std::pair<Rounded, Ratio>> density;
  std::map<VertexId, CandidateRecord> candidates;
  std::vector<std::tuple<VertexId, EdgeId, VertexId>> votes;  // agent, edge, center
  std::map<VertexId, StarRecord> stars;
  std::map<VertexId, std::vector<EdgeId>> terminated;
};

class Violations {
 public:
  explicit Violations(CertificateReport& r) : r_(r) {}
  void add(const std::string& what) {
    r_.ok = false;
    ++r_.violation_count;
    if (r_.violations.size() < 20) r_.violations.push_back(what);
  }

 private:
  CertificateReport& r_;
};

std::vector<EdgeId> tail(const std::vector<std::int64_t>& d, std::size_t from) {
  std::vector<EdgeId> out;
  for (std::size_t i = from; i < d.size(); ++i) out.push_back(static_cast<EdgeId>(d[i]));
  return out;
}

std::size_t ceil_log2(std::uint64_t x) {
  std::size_t k = 0;
  while ((std::uint64_t{1} << k) < x) ++k;
  return k;
}

}  // namespace

CertificateReport certificate_check(const Graph& g, const SpannerResult& result) {
  CertificateReport rep;
  Violations bad(rep);
  const Variant variant = result.variant;
  const bool directed = variant == Variant::directed;
  const auto n = static_cast<std::size_t>(g.vertex_count());
  const auto m = static_cast<std::size_t>(g.edge_count());

  std::map<std::int64_t, Iteration> its;
  for (const Event& ev : result.trace.events) {
    const auto& d = ev.data;
    Iteration& it = its[d.at(0)];
    const VertexId v = ev.node;
    if (ev.kind == "density") {
      it.density[v] = {Rounded::from_code(static_cast<std::uint64_t>(d.at(1))), Ratio(d.at(2), d.at(3))};
    } else if (ev.kind == "candidate") {
      CandidateRecord c;
      c.rounded = Rounded::from_code(static_cast<std::uint64_t>(d.at(1)));
      c.spanned = d.at(2);
      c.cost = d.at(3);
      c.rank = static_cast<std::uint64_t>(d.at(4));
      c.kind = static_cast<ChoiceKind>(d.at(5));
      c.edges = tail(d, 6);
      it.candidates[v] = std::move(c);
    } else if (ev.kind == "vote") {
      it.votes.emplace_back(v, static_cast<EdgeId>(d.at(1)), static_cast<VertexId>(d.at(2)));
    } else if (ev.kind == "star") {
      it.stars[v] = {d.at(1), d.at(2), tail(d, 3)};
    } else if (ev.kind == "terminate") {
      it.terminated[v] = tail(d, 1);
    }
  }

  const EdgeSubset targets = g.targets();
  EdgeSubset h = result.h0;
  EdgeSubset h1(m), h2(m);
  EdgeSubset covered = covered_edges(g, h, 2, targets);
  rep.cost.assign(m, Ratio(0));

  // Static 2-hop maximum incident weight.
  std::vector<Weight> w1(n, 0), w2(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (EdgeId e : g.incident(static_cast<VertexId>(v))) w1[v] = std::max(w1[v], g.edge(e).weight);
  for (std::size_t v = 0; v < n; ++v) {
    auto dist = bfs_distances(g, static_cast<VertexId>(v), 2);
    for (std::size_t u = 0; u < n; ++u)
      if (dist[u] >= 0) w2[v] = std::max(w2[v], w1[u]);
  }
  auto threshold = [&](VertexId v) -> std::optional<Ratio> {
    if (variant == Variant::client_server) return Ratio(1, 2);
    if (variant == Variant::weighted) {
      if (w2[static_cast<std::size_t>(v)] == 0) return std::nullopt;
      return Ratio(1, w2[static_cast<std::size_t>(v)]);
    }
    return Ratio(1);
  };

  std::vector<char> halted(n, 0);
  const std::map<VertexId, CandidateRecord>* prev_candidates = nullptr;
  std::int64_t expected = 0;
  for (auto& [index, it] : its) {
    const std::string at = "iteration " + std::to_string(index) + ": ";
    if (index != expected) bad.add(at + "iteration numbers are not contiguous");
    expected = index + 1;
    IterationRecord rec;
    rec.iteration = static_cast<std::uint32_t>(index);

    EdgeSubset uncovered = targets;
    uncovered -= covered;
    std::vector<char> active(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      bool has = it.density.count(static_cast<VertexId>(v)) > 0;
      if (has && halted[v]) bad.add(at + "halted vertex " + std::to_string(v) + " is active");
      if (!has && !halted[v]) bad.add(at + "vertex " + std::to_string(v) + " vanished without terminating");
      active[v] = has;
    }
    for (auto& [v, d] : it.density) {
      if (d.first != Rounded::of(d.second)) bad.add(at + "rounded density of " + std::to_string(v) + " is wrong");
      rec.rho_max = std::max(rec.rho_max, d.first);
      ++rec.active;
    }

    // Active vertices within two hops through active vertices.
    auto near = [&](VertexId v) {
      std::set<VertexId> out{v};
      for (VertexId u : g.neighbors(v)) {
        if (!active[static_cast<std::size_t>(u)]) continue;
        out.insert(u);
        for (VertexId x : g.neighbors(u))
          if (active[static_cast<std::size_t>(x)]) out.insert(x);
      }
      return out;
    };

    // Terminations and candidacies.
    for (auto& [v, d] : it.density) {
      auto thr = threshold(v);
      Rounded max_rounded;
      Ratio max_rho;
      for (VertexId u : near(v)) {
        const auto& du = it.density.at(u);
        max_rounded = std::max(max_rounded, du.first);
        max_rho = std::max(max_rho, du.second);
      }
      bool should_stop = !thr || max_rho < *thr;
      bool stopped = it.terminated.count(v) > 0;
      if (should_stop != stopped)
        bad.add(at + "vertex " + std::to_string(v) + (stopped ? " terminated early" : " failed to terminate"));
      bool should_run = !should_stop && d.first >= max_rounded && d.second >= *thr;
      bool ran = it.candidates.count(v) > 0;
      if (should_run != ran)
        bad.add(at + "vertex " + std::to_string(v) + (ran ? " is an illegal candidate" : " skipped its candidacy"));
    }
    for (auto& [v, added] : it.terminated) {
      std::vector<EdgeId> want;
      for (EdgeId e : g.incident(v))
        if (uncovered.test(e) && (variant != Variant::client_server || g.edge(e).server)) want.push_back(e);
      std::sort(want.begin(), want.end());
      if (want != added) bad.add(at + "vertex " + std::to_string(v) + " added the wrong edges at termination");
      halted[static_cast<std::size_t>(v)] = 1;
      ++rec.terminated;
    }

    const int shift = directed ? 3 : 2;
    for (auto& [v, c] : it.candidates) {
      ++rep.candidates_checked;
      ++rec.candidates;
      const std::string who = at + "candidate " + std::to_string(v);
      if (!it.density.count(v) || it.density.at(v).first != c.rounded) bad.add(who + " reports another density");
      DensityValue dv;
      try {
        dv = density_of(g, Star{v, c.edges}, uncovered, variant);
      } catch (const std::exception& e) {
        bad.add(who + ": " + e.what());
        continue;
      }
      c.covers = dv.spanned;
      if (dv.num != c.spanned || dv.den != c.cost) bad.add(who + " misreports |C_v| or its cost");
      if (dv.rho < c.rounded.fraction(shift)) bad.add(who + " chose a star below the density threshold");
      const CandidateRecord* before = nullptr;
      if (prev_candidates) {
        auto p = prev_candidates->find(v);
        if (p != prev_candidates->end() && p->second.rounded == c.rounded) before = &p->second;
      }
      if (before) {
        ++rep.subset_checks;
        if (!std::includes(before->edges.begin(), before->edges.end(), c.edges.begin(), c.edges.end()))
          bad.add(who + " left its previous star at an unchanged rounded density");
        if (c.kind == ChoiceKind::fresh) bad.add(who + " ignored its previous star");
      } else if (c.kind != ChoiceKind::fresh) {
        bad.add(who + " claims a previous star it did not have");
      }
      if (c.kind == ChoiceKind::rebuilt) ++rep.fallback_hits;
      if (c.rounded == rec.rho_max) rec.phi += c.spanned;
    }

    // Votes: each uncovered target spanned by some candidate gets exactly one
    // vote, from its agent, for the minimum-rank candidate spanning it.
    std::map<EdgeId, VertexId> best;
    for (auto& [v, c] : it.candidates)
      for (EdgeId e : c.covers) {
        auto [pos, fresh] = best.emplace(e, v);
        if (!fresh) {
          const auto& o = it.candidates.at(pos->second);
          if (std::tie(c.rank, v) < std::tie(o.rank, pos->second)) pos->second = v;
        }
      }
    std::map<EdgeId, VertexId> cast;
    std::map<VertexId, std::int64_t> tally;
    for (auto [agent, e, center] : it.votes) {
      ++rep.votes_checked;
      const Edge& x = g.edge(e);
      VertexId want_agent = directed ? x.u : std::min(x.u, x.v);
      if (agent != want_agent) bad.add(at + "edge " + std::to_string(e) + " voted through the wrong endpoint");
      if (!cast.emplace(e, center).second) bad.add(at + "edge " + std::to_string(e) + " voted twice");
      ++tally[center];
    }
    if (cast != best) bad.add(at + "votes differ from the minimum-rank rule");

    for (auto& [v, c] : it.candidates) {
      bool should_add = 8 * tally[v] >= c.spanned;
      auto s = it.stars.find(v);
      if (should_add != (s != it.stars.end())) {
        bad.add(at + "star at " + std::to_string(v) + (should_add ? " was not added" : " was added without votes"));
        continue;
      }
      if (!should_add) continue;
      ++rep.stars_checked;
      ++rec.stars_added;
      if (s->second.votes != tally[v] || s->second.spanned != c.spanned || s->second.edges != c.edges)
        bad.add(at + "star record at " + std::to_string(v) + " differs from its candidacy");
      for (EdgeId e : c.edges) {
        h.set(e);
        h1.set(e);
      }
    }
    for (auto& [v, s] : it.stars)
      if (!it.candidates.count(v)) bad.add(at + "star at non-candidate " + std::to_string(v));
    EdgeSubset term_now(m);
    for (auto& [v, added] : it.terminated)
      for (EdgeId e : added) {
        h.set(e);
        h2.set(e);
        term_now.set(e);
      }

    EdgeSubset now = covered_edges(g, h, 2, targets);
    EdgeSubset fresh = now;
    fresh -= covered;
    for (EdgeId e : fresh.ids()) {
      if (term_now.test(e)) {
        rep.cost[static_cast<std::size_t>(e)] = Ratio(variant == Variant::weighted ? g.edge(e).weight : 1);
        continue;
      }
      auto v = cast.find(e);
      if (v == cast.end() || !it.stars.count(v->second)) continue;
      const auto& c = it.candidates.at(v->second);
      rep.cost[static_cast<std::size_t>(e)] = Ratio(c.cost, c.spanned);
    }
    covered = now;
    for (auto& [v, c] : it.candidates)
      if (c.rounded == rec.rho_max)
        for (EdgeId e : c.covers) rec.phi_end += !covered.test(e);
    rep.iterations.push_back(rec);
    prev_candidates = &it.candidates;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!halted[v]) bad.add("vertex " + std::to_string(v) + " never terminated");

  if (!(h == result.h)) bad.add("spanner differs from the union of node outputs");
  if (!(h1 == result.h1) || !(h2 == result.h2)) bad.add("star and termination parts differ from the run");

  auto mode = variant == Variant::client_server ? CoverMode::client_server : CoverMode::plain;
  auto vr = verify_spanner(g, h, 2, mode);
  std::vector<EdgeId> allowed = variant == Variant::client_server ? result.uncoverable : std::vector<EdgeId>{};
  rep.valid_spanner = vr.uncovered == allowed;
  if (!rep.valid_spanner) bad.add("output is not a 2-spanner of the coverable edges");

  for (EdgeId e : h.ids()) rep.spanner_cost += variant == Variant::weighted ? g.edge(e).weight : 1;
  for (const Ratio& c : rep.cost) rep.cost_sum += c.big();
  if (8 * rep.cost_sum < BigRational(rep.spanner_cost)) bad.add("8 * sum of costs is below the spanner cost");

  std::set<Rounded> distinct;
  for (std::size_t i = 0; i < rep.iterations.size(); ++i) {
    const auto& r = rep.iterations[i];
    distinct.insert(r.rho_max);
    if (i == 0) continue;
    const auto& p = rep.iterations[i - 1];
    if (r.rho_max > p.rho_max) bad.add("rho_max rose at iteration " + std::to_string(i));
    if (r.rho_max == p.rho_max && r.phi > p.phi_end)
      bad.add("phi rose at fixed rho_max at iteration " + std::to_string(i));
  }
  rep.distinct_rho_max = distinct.size();
  if (variant == Variant::undirected) {
    std::size_t bound = 2 * ceil_log2(g.max_degree() + 1) + 2;
    if (rep.distinct_rho_max > bound) bad.add("too many distinct rho_max values");
  }
  return rep;
}

nlohmann::json to_json(const CertificateReport& r) {
  nlohmann::json j;
  j["ok"] = r.ok;
  j["violation_count"] = r.violation_count;
  j["violations"] = r.violations;
  j["valid_spanner"] = r.valid_spanner;
  j["spanner_cost"] = r.spanner_cost;
  std::ostringstream sum;
  sum << numerator(r.cost_sum) << "/" << denominator(r.cost_sum);
  j["cost_sum"] = sum.str();
  j["distinct_rho_max"] = r.distinct_rho_max;
  j["candidates_checked"] = r.candidates_checked;
  j["stars_checked"] = r.stars_checked;
  j["votes_checked"] = r.votes_checked;
  j["subset_checks"] = r.subset_checks;
  j["fallback_hits"] = r.fallback_hits;
  nlohmann::json its = nlohmann::json::array();
  for (const auto& x : r.iterations)
    its.push_back({{"iteration", x.iteration}, {"rho_max", x.rho_max.str()}, {"phi", x.phi},
                   {"phi_end", x.phi_end}, {"active", x.active}, {"candidates", x.candidates},
                   {"stars_added", x.stars_added}, {"terminated", x.terminated}});
  j["iterations"] = its;
  return j;
}

}  // namespace spandist
