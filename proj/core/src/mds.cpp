#include "spandist/mds.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace spandist {

namespace {

enum Phase : std::uint32_t { kStatus, kDensity, kRelay, kCandidacy, kVote, kJoin };

std::uint64_t rank_bound(VertexId n) {
  auto x = static_cast<std::uint64_t>(std::max<VertexId>(n, 2));
  if (x >= (1u << 15)) return std::uint64_t{1} << 62;
  return x * x * x * x;
}

// Messages carry a single varint; the phase tells what it means.
Bytes one(std::uint64_t x) {
  MessageWriter w;
  w.put(x);
  return w.take();
}

std::uint64_t read_one(const Message& m) {
  MessageReader r(m.payload);
  return r.get();
}

class MdsNode final : public NodeProcess {
 public:
  explicit MdsNode(const LocalView& view) : self_(view.self), n_(view.vertex_count), nb_(view.neighbors) {}

  void step(StepContext& ctx) override {
    iteration_ = static_cast<std::int64_t>(ctx.round() / kMdsRoundsPerIteration);
    switch (ctx.round() % kMdsRoundsPerIteration) {
      case kStatus:
        if (!ctx.inbox().empty()) covered_ = true;  // a neighbour joined
        alive_.clear();
        for (VertexId u : nb_) ctx.send(u, one(covered_ ? 1 : 0));
        break;
      case kDensity: {
        uncovered_ = covered_ ? 0 : 1;
        for (const Message& m : ctx.inbox()) {
          alive_.push_back(m.from);
          if (read_one(m) == 0) uncovered_ += 1;
        }
        if (uncovered_ == 0) {
          ctx.output({in_d_ ? 1 : 0});
          return;
        }
        rounded_ = Rounded::of(Ratio(uncovered_));
        ctx.emit("density", {iteration_, static_cast<std::int64_t>(rounded_.code()), uncovered_});
        for (VertexId u : alive_) ctx.send(u, one(rounded_.code()));
        break;
      }
      case kRelay:
        best_ = rounded_;
        for (const Message& m : ctx.inbox()) best_ = std::max(best_, Rounded::from_code(read_one(m)));
        for (VertexId u : alive_) ctx.send(u, one(best_.code()));
        break;
      case kCandidacy: {
        Rounded far = best_;
        for (const Message& m : ctx.inbox()) far = std::max(far, Rounded::from_code(read_one(m)));
        candidate_ = rounded_ >= far;
        if (!candidate_) break;
        std::uniform_int_distribution<std::uint64_t> dist(1, rank_bound(n_));
        rank_ = dist(ctx.rng());
        ctx.emit("candidate", {iteration_, static_cast<std::int64_t>(rounded_.code()), uncovered_,
                               static_cast<std::int64_t>(rank_)});
        for (VertexId u : alive_) ctx.send(u, one(rank_));
        break;
      }
      case kVote: {
        votes_ = 0;
        if (covered_) break;
        VertexId choice = -1;
        std::uint64_t best_rank = 0;
        if (candidate_) {
          choice = self_;
          best_rank = rank_;
        }
        for (const Message& m : ctx.inbox()) {
          std::uint64_t r = read_one(m);
          if (choice < 0 || std::tie(r, m.from) < std::tie(best_rank, choice)) {
            choice = m.from;
            best_rank = r;
          }
        }
        if (choice < 0) break;
        ctx.emit("vote", {iteration_, choice});
        if (choice == self_) ++votes_;
        else ctx.send(choice, one(1));
        break;
      }
      case kJoin: {
        if (!candidate_) break;
        std::int64_t votes = votes_ + static_cast<std::int64_t>(ctx.inbox().size());
        if (8 * votes < uncovered_) break;
        in_d_ = true;
        covered_ = true;
        ctx.emit("join", {iteration_, votes, uncovered_});
        for (VertexId u : alive_) ctx.send(u, one(1));
        break;
      }
    }
  }

 private:
  VertexId self_;
  VertexId n_;
  std::vector<VertexId> nb_;
  std::vector<VertexId> alive_;
  std::int64_t iteration_ = 0;
  bool covered_ = false;
  bool in_d_ = false;
  bool candidate_ = false;
  std::int64_t uncovered_ = 0;
  std::int64_t votes_ = 0;
  Rounded rounded_, best_;
  std::uint64_t rank_ = 0;
};

class MdsProgram final : public NodeProgram {
 public:
  std::unique_ptr<NodeProcess> spawn(const LocalView& view) const override { return std::make_unique<MdsNode>(view); }
};

}  // namespace

bool is_dominating(const Graph& g, const std::vector<VertexId>& d) {
  std::vector<char> dom(static_cast<std::size_t>(g.vertex_count()), 0);
  for (VertexId v : d) {
    dom[static_cast<std::size_t>(v)] = 1;
    for (VertexId u : g.neighbors(v)) dom[static_cast<std::size_t>(u)] = 1;
  }
  return std::find(dom.begin(), dom.end(), 0) == dom.end();
}

MdsResult mds(const Graph& g, const MdsOptions& options) {
  if (g.directed()) throw std::invalid_argument("dominating set needs an undirected graph");
  MdsProgram program;
  RunOptions ro;
  ro.seed = options.seed;
  ro.max_rounds = options.max_rounds;
  ro.threads = options.threads;
  ro.record_messages = options.record_messages;
  MdsResult r;
  r.trace = run(g, program, ro);
  for (std::size_t v = 0; v < r.trace.outputs.size(); ++v)
    if (r.trace.outputs[v] && r.trace.outputs[v]->at(0) == 1) r.dominating.push_back(static_cast<VertexId>(v));
  std::int64_t last = -1;
  std::map<std::int64_t, Rounded> rho_max;
  std::map<std::int64_t, std::int64_t> joins;
  for (const Event& ev : r.trace.events) {
    last = std::max(last, ev.data.at(0));
    if (ev.kind == "density") {
      auto& x = rho_max[ev.data[0]];
      x = std::max(x, Rounded::from_code(static_cast<std::uint64_t>(ev.data[1])));
    }
    if (ev.kind == "join") ++joins[ev.data[0]];
  }
  r.iterations = static_cast<std::uint32_t>(last + 1);
  for (std::int64_t i = 0; i <= last; ++i) {
    r.trace.metrics["rho_max"].push_back(rho_max[i].str());
    r.trace.metrics["joined"].push_back(std::to_string(joins[i]));
  }
  return r;
}

MdsCertificate mds_check(const Graph& g, const MdsResult& result) {
  MdsCertificate c;
  auto bad = [&](const std::string& s) {
    c.ok = false;
    ++c.violation_count;
    if (c.violations.size() < 20) c.violations.push_back(s);
  };
  const auto n = static_cast<std::size_t>(g.vertex_count());
  struct It {
    std::map<VertexId, std::pair<Rounded, std::int64_t>> density;
    std::map<VertexId, std::pair<std::int64_t, std::uint64_t>> candidates;  // |C|, rank
    std::map<VertexId, VertexId> votes;
    std::map<VertexId, std::pair<std::int64_t, std::int64_t>> joins;
  };
  std::map<std::int64_t, It> its;
  for (const Event& ev : result.trace.events) {
    It& it = its[ev.data.at(0)];
    if (ev.kind == "density")
      it.density[ev.node] = {Rounded::from_code(static_cast<std::uint64_t>(ev.data.at(1))), ev.data.at(2)};
    else if (ev.kind == "candidate")
      it.candidates[ev.node] = {ev.data.at(2), static_cast<std::uint64_t>(ev.data.at(3))};
    else if (ev.kind == "vote" && !it.votes.emplace(ev.node, static_cast<VertexId>(ev.data.at(1))).second)
      bad("vertex " + std::to_string(ev.node) + " voted twice");
    else if (ev.kind == "join")
      it.joins[ev.node] = {ev.data.at(1), ev.data.at(2)};
  }
  std::vector<char> covered(n, 0);
  std::vector<VertexId> d;
  c.cost.assign(n, Ratio(0));
  for (auto& [index, it] : its) {
    const std::string at = "iteration " + std::to_string(index) + ": ";
    auto uncovered_in = [&](VertexId v) {
      std::int64_t k = !covered[static_cast<std::size_t>(v)];
      for (VertexId u : g.neighbors(v)) k += !covered[static_cast<std::size_t>(u)];
      return k;
    };
    Rounded mx;
    for (std::size_t v = 0; v < n; ++v) {
      auto u = uncovered_in(static_cast<VertexId>(v));
      auto f = it.density.find(static_cast<VertexId>(v));
      if ((u > 0) != (f != it.density.end())) bad(at + "vertex " + std::to_string(v) + " active status is wrong");
      if (f == it.density.end()) continue;
      if (f->second.second != u || f->second.first != Rounded::of(Ratio(u)))
        bad(at + "vertex " + std::to_string(v) + " misreports |U_v|");
      mx = std::max(mx, f->second.first);
    }
    c.rho_max.push_back(mx);
    for (auto& [v, dv] : it.density) {
      Rounded far = dv.first;
      for (VertexId u : g.neighbors(v)) {
        auto fu = it.density.find(u);
        if (fu == it.density.end()) continue;
        far = std::max(far, fu->second.first);
        for (VertexId x : g.neighbors(u)) {
          auto fx = it.density.find(x);
          if (fx != it.density.end()) far = std::max(far, fx->second.first);
        }
      }
      if ((dv.first >= far) != (it.candidates.count(v) > 0))
        bad(at + "candidacy of " + std::to_string(v) + " breaks the 2-neighbourhood rule");
    }
    std::map<VertexId, std::int64_t> tally;
    for (std::size_t u = 0; u < n; ++u) {
      if (covered[u]) {
        if (it.votes.count(static_cast<VertexId>(u))) bad(at + "covered vertex voted");
        continue;
      }
      VertexId want = -1;
      auto consider = [&](VertexId x) {
        auto f = it.candidates.find(x);
        if (f == it.candidates.end()) return;
        if (want < 0 || std::tie(f->second.second, x) < std::tie(it.candidates.at(want).second, want)) want = x;
      };
      consider(static_cast<VertexId>(u));
      for (VertexId x : g.neighbors(static_cast<VertexId>(u))) consider(x);
      auto f = it.votes.find(static_cast<VertexId>(u));
      VertexId got = f == it.votes.end() ? -1 : f->second;
      if (got != want) bad(at + "vertex " + std::to_string(u) + " voted against the minimum-rank rule");
      if (got >= 0) ++tally[got];
    }
    std::vector<VertexId> joined;
    for (auto& [v, cand] : it.candidates) {
      bool should = 8 * tally[v] >= cand.first;
      auto j = it.joins.find(v);
      if (should != (j != it.joins.end())) {
        bad(at + "join rule broken at " + std::to_string(v));
        continue;
      }
      if (!should) continue;
      if (j->second.first != tally[v] || j->second.second != cand.first) bad(at + "join record mismatch");
      joined.push_back(v);
    }
    for (auto& [v, j] : it.joins)
      if (!it.candidates.count(v)) bad(at + "non-candidate " + std::to_string(v) + " joined");
    std::vector<char> next = covered;
    for (VertexId v : joined) {
      d.push_back(v);
      next[static_cast<std::size_t>(v)] = 1;
      for (VertexId u : g.neighbors(v)) next[static_cast<std::size_t>(u)] = 1;
    }
    for (auto& [u, v] : it.votes)
      if (!covered[static_cast<std::size_t>(u)] && it.joins.count(v))
        c.cost[static_cast<std::size_t>(u)] = Ratio(1, it.candidates.at(v).first);
    covered = std::move(next);
  }
  std::sort(d.begin(), d.end());
  if (d != result.dominating) bad("dominating set differs from node outputs");
  c.dominating = is_dominating(g, result.dominating);
  if (!c.dominating) bad("output does not dominate the graph");
  for (const Ratio& x : c.cost) c.cost_sum += x.big();
  if (8 * c.cost_sum < BigRational(static_cast<std::int64_t>(result.dominating.size())))
    bad("8 * sum of costs is below |D|");
  std::set<Rounded> distinct(c.rho_max.begin(), c.rho_max.end());
  c.distinct_rho_max = distinct.size();
  for (std::size_t i = 1; i < c.rho_max.size(); ++i)
    if (c.rho_max[i] > c.rho_max[i - 1]) bad("rho_max rose at iteration " + std::to_string(i));
  std::size_t lg = 0;
  while ((std::size_t{1} << lg) < g.max_degree() + 1) ++lg;
  if (c.distinct_rho_max > lg + 1) bad("too many distinct rho_max values");
  return c;
}

nlohmann::json to_json(const MdsCertificate& c) {
  nlohmann::json j;
  j["ok"] = c.ok;
  j["violation_count"] = c.violation_count;
  j["violations"] = c.violations;
  j["dominating"] = c.dominating;
  std::ostringstream s;
  s << numerator(c.cost_sum) << "/" << denominator(c.cost_sum);
  j["cost_sum"] = s.str();
  j["distinct_rho_max"] = c.distinct_rho_max;
  nlohmann::json rm = nlohmann::json::array();
  for (const auto& r : c.rho_max) rm.push_back(r.str());
  j["rho_max"] = rm;
  return j;
}

}  // namespace spandist
