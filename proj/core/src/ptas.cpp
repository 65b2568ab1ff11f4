#include "spandist/ptas.hpp"

#include "spandist/message.hpp"
#include "spandist/verify.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace spandist {

namespace {

int ceil_log2(std::int64_t n) { return n <= 1 ? 0 : std::bit_width(static_cast<std::uint64_t>(n - 1)); }

// Edges with both endpoints at distance <= d (dist from bfs_distances).
EdgeSubset ball_edges(const Graph& g, const std::vector<int>& dist, int d) {
  EdgeSubset out(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    int a = dist[static_cast<std::size_t>(g.edge(e).u)], b = dist[static_cast<std::size_t>(g.edge(e).v)];
    if (a != -1 && b != -1 && a <= d && b <= d) out.set(e);
  }
  return out;
}

std::size_t ball_size(const std::vector<int>& dist, int d) {
  return static_cast<std::size_t>(std::count_if(dist.begin(), dist.end(), [&](int x) { return x != -1 && x <= d; }));
}

struct State {
  EdgeSubset h;
  EdgeSubset uncovered;
};

void note(PtasResult& r, std::string msg) {
  r.ok = false;
  if (r.violations.size() < 50) r.violations.push_back(std::move(msg));
}

PtasStep run_step(const Graph& g, VertexId v, int k, const Ratio& eps, int cap, State& s,
                  const OracleBudget& budget, PtasResult& res) {
  const auto dist = bfs_distances(g, v, g.vertex_count());
  std::map<int, BallSpanner> memo;
  auto at = [&](int d) -> const BallSpanner& {
    auto it = memo.find(d);
    if (it == memo.end()) it = memo.emplace(d, ball_spanner_size(g, v, d, k, s.uncovered, budget)).first;
    return it->second;
  };
  const BigRational factor = BigRational(1) + eps.big();
  PtasStep step;
  step.v = v;
  int r = 0;
  for (;;) {
    Weight inner = at(r).size;
    if (ball_size(dist, r) == ball_size(dist, r + 2 * k)) {
      // The ball stopped growing, so both values agree.
      memo.emplace(r + 2 * k, at(r));
    }
    Weight outer = at(r + 2 * k).size;
    if (BigRational(outer) <= factor * BigRational(inner)) break;
    r += 2 * k;
    ++step.failed;
  }
  if (step.failed > cap)
    note(res, "vertex " + std::to_string(v) + " needed " + std::to_string(step.failed) + " radius increments, cap " +
                  std::to_string(cap));
  step.radius = r;
  step.g_inner = at(r).size;
  step.g_outer = at(r + 2 * k).size;
  EdgeSubset inner = ball_edges(g, dist, r);
  inner &= s.uncovered;
  step.inner_uncovered = inner.ids();
  EdgeSubset outer = ball_edges(g, dist, r + 2 * k);
  s.h |= at(r + 2 * k).witness;
  s.uncovered -= covered_edges(g, s.h, k, s.uncovered);
  outer &= s.uncovered;
  if (!outer.empty()) note(res, "edges of the outer ball of " + std::to_string(v) + " left uncovered");
  return step;
}

// Multi-source undirected hop distances.
std::vector<int> distances_from(const Graph& g, const std::vector<VertexId>& sources, int limit) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  std::deque<VertexId> q;
  for (VertexId s : sources)
    if (dist[static_cast<std::size_t>(s)] == -1) {
      dist[static_cast<std::size_t>(s)] = 0;
      q.push_back(s);
    }
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    if (dist[static_cast<std::size_t>(v)] >= limit) continue;
    for (VertexId w : g.neighbors(v))
      if (dist[static_cast<std::size_t>(w)] == -1) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

// E_i sets must sit at edge distance >= 2k+1, edge distance being one more
// than the hop distance between the closest endpoints.
void check_separation(const Graph& g, int k, PtasResult& res) {
  for (std::size_t i = 0; i < res.steps.size(); ++i) {
    const auto& ei = res.steps[i].inner_uncovered;
    if (ei.empty()) continue;
    std::vector<VertexId> ends;
    for (EdgeId e : ei) {
      ends.push_back(g.edge(e).u);
      ends.push_back(g.edge(e).v);
    }
    auto dist = distances_from(g, ends, 2 * k);
    for (std::size_t j = i + 1; j < res.steps.size(); ++j)
      for (EdgeId e : res.steps[j].inner_uncovered)
        for (VertexId x : {g.edge(e).u, g.edge(e).v}) {
          int d = dist[static_cast<std::size_t>(x)];
          if (d != -1 && d + 1 < 2 * k + 1) {
            note(res, "E sets of steps " + std::to_string(i) + " and " + std::to_string(j) + " are too close");
            goto next_pair;
          }
        }
  next_pair:;
  }
}

EdgeSubset coverable_targets(const Graph& g, int k, PtasResult& res) {
  EdgeSubset t = g.targets();
  if (g.client_server()) {
    EdgeSubset c = coverable_client_edges(g, k);
    EdgeSubset bad = t;
    bad -= c;
    res.uncoverable = bad.ids();
    t &= c;
  }
  return t;
}

void finish(const Graph& g, int k, const EdgeSubset& targets, PtasResult& res) {
  check_separation(g, k, res);
  EdgeSubset left = targets;
  left -= covered_edges(g, res.h, k, targets);
  if (!left.empty()) note(res, std::to_string(left.count()) + " target edges left uncovered");
}

void check_params(int k, const Ratio& eps) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (eps <= Ratio(0)) throw std::invalid_argument("epsilon must be positive");
}

}  // namespace

BallSpanner ball_spanner_size(const Graph& g, VertexId v, int d, int k, const EdgeSubset& uncovered,
                              const OracleBudget& budget) {
  if (d < 0 || k < 1) throw std::invalid_argument("radius must be >= 0 and k >= 1");
  const auto dist = bfs_distances(g, v, d + k);
  BallSpanner out;
  EdgeSubset targets = ball_edges(g, dist, d);
  targets &= uncovered;
  out.targets = targets.count();
  if (targets.empty()) {
    out.witness = EdgeSubset(static_cast<std::size_t>(g.edge_count()));
    return out;
  }
  EdgeSubset usable = ball_edges(g, dist, d + k);
  usable &= g.usable();
  auto opt = min_cover_exact(g, k, targets, usable, g.weighted(), budget);
  out.size = opt.cost;
  out.witness = std::move(opt.witness);
  return out;
}

int radius_increment_cap(const Graph& g, const Ratio& epsilon) {
  const std::int64_t n = g.vertex_count();
  BigRational target(n * n);
  if (g.weighted()) {
    Weight lo = 0, hi = 0;
    for (const Edge& e : g.edges())
      if (e.weight > 0) {
        lo = lo == 0 ? e.weight : std::min(lo, e.weight);
        hi = std::max(hi, e.weight);
      }
    if (lo > 0) target *= BigRational(hi, lo);
  }
  const BigRational factor = BigRational(1) + epsilon.big();
  BigRational p(1);
  int l = 0;
  while (p < target) {
    p *= factor;
    ++l;
  }
  return l;
}

int power_radius(const Graph& g, int k, const Ratio& epsilon) {
  return 4 * k * radius_increment_cap(g, epsilon) + 6 * k + 1;
}

PtasResult ptas_sequential(const Graph& g, int k, const Ratio& epsilon, std::vector<VertexId> order,
                           const OracleBudget& budget) {
  check_params(k, epsilon);
  const VertexId n = g.vertex_count();
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
  }
  {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<VertexId> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    if (sorted != all) throw std::invalid_argument("order must be a permutation of the vertices");
  }
  PtasResult res;
  res.order = order;
  res.increment_cap = radius_increment_cap(g, epsilon);
  const EdgeSubset targets = coverable_targets(g, k, res);
  State s{EdgeSubset(static_cast<std::size_t>(g.edge_count())), targets};
  for (VertexId v : order) res.steps.push_back(run_step(g, v, k, epsilon, res.increment_cap, s, budget, res));
  res.h = s.h;
  finish(g, k, targets, res);
  return res;
}

Graph power_graph(const Graph& g, int r) {
  if (r < 1) throw std::invalid_argument("power radius must be at least 1");
  std::vector<Edge> es;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    auto dist = bfs_distances(g, u, r);
    for (VertexId w = u + 1; w < g.vertex_count(); ++w)
      if (dist[static_cast<std::size_t>(w)] != -1) es.push_back({u, w, 1, false, false});
  }
  return Graph(g.vertex_count(), std::move(es), {});
}

namespace {

// One phase: uncolored vertices draw a radius and flood (id, radius) that
// far; a vertex joins the highest id reaching it if strictly inside.
class DecompositionNode final : public NodeProcess {
 public:
  DecompositionNode(const LocalView& view, int cap, int phases)
      : self_(view.self), n_(view.vertex_count), nb_(view.neighbors), cap_(cap), phases_(phases) {}

  void step(StepContext& ctx) override {
    const int period = cap_ + 1;
    const int phase = static_cast<int>(ctx.round()) / period;
    const int s = static_cast<int>(ctx.round()) % period;
    std::vector<VertexId> fresh;
    if (s == 0) {
      best_.clear();
      if (color_ < 0) {
        int radius = 1;
        std::bernoulli_distribution coin(0.5);
        while (radius < cap_ && coin(ctx.rng())) ++radius;
        best_[self_] = radius;
        fresh.push_back(self_);
        ctx.emit("radius", {phase, radius});
      }
    } else {
      for (const Message& m : ctx.inbox()) {
        MessageReader rd(m.payload);
        auto centers = rd.get_ascending<VertexId>();
        for (VertexId c : centers) {
          int left = static_cast<int>(rd.get());
          auto it = best_.find(c);
          if (it == best_.end() || it->second < left) {
            best_[c] = left;
            fresh.push_back(c);
          }
        }
      }
    }
    if (s < cap_) {
      std::sort(fresh.begin(), fresh.end());
      fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
      std::vector<VertexId> go;
      for (VertexId c : fresh)
        if (best_[c] > 0) go.push_back(c);
      if (!go.empty()) {
        MessageWriter w;
        w.put_ascending(go);
        for (VertexId c : go) w.put(static_cast<std::uint64_t>(best_[c] - 1));
        Bytes payload = w.take();
        for (VertexId u : nb_) ctx.send(u, payload);
      }
      return;
    }
    if (color_ < 0) {
      auto win = best_.rbegin();
      if (win->second > 0) {
        color_ = phase;
        cluster_ = static_cast<std::int64_t>(phase) * n_ + win->first;
        ctx.emit("join", {phase, win->first});
      }
    }
    if (phase == phases_ - 1) ctx.output({cluster_, color_});
  }

 private:
  VertexId self_;
  std::int64_t n_;
  std::vector<VertexId> nb_;
  int cap_;
  int phases_;
  std::map<VertexId, int> best_;  // center -> hops it may still travel
  int color_ = -1;
  std::int64_t cluster_ = -1;
};

class DecompositionProgram final : public NodeProgram {
 public:
  DecompositionProgram(int cap, int phases) : cap_(cap), phases_(phases) {}
  std::unique_ptr<NodeProcess> spawn(const LocalView& view) const override {
    return std::make_unique<DecompositionNode>(view, cap_, phases_);
  }

 private:
  int cap_, phases_;
};

int color_bound(VertexId n) { return 4 * (ceil_log2(n) + 1); }

}  // namespace

Decomposition network_decomposition(const Graph& g, int r, std::uint64_t seed, unsigned threads) {
  Graph gr = power_graph(g, r);
  Decomposition d;
  d.r = r;
  const VertexId n = g.vertex_count();
  d.radius_cap = ceil_log2(n) + 1;
  d.phases = color_bound(n);
  RunOptions opt;
  opt.seed = seed;
  opt.threads = threads;
  opt.max_rounds = static_cast<std::uint32_t>(d.phases * (d.radius_cap + 1));
  d.trace = run(gr, DecompositionProgram(d.radius_cap, d.phases), opt);
  d.cluster.resize(static_cast<std::size_t>(n));
  d.color.resize(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) {
    const auto& o = *d.trace.outputs[static_cast<std::size_t>(v)];
    d.cluster[static_cast<std::size_t>(v)] = o[0];
    d.color[static_cast<std::size_t>(v)] = static_cast<int>(o[1]);
    if (o[1] < 0) throw std::runtime_error("vertex " + std::to_string(v) + " left uncolored by the decomposition");
  }
  // Phases that formed no cluster leave gaps; renumber colors densely.
  std::vector<int> used = d.color;
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (int& c : d.color) c = static_cast<int>(std::lower_bound(used.begin(), used.end(), c) - used.begin());
  d.colors = static_cast<int>(used.size());
  d.base_rounds = static_cast<std::uint64_t>(d.trace.rounds) * static_cast<std::uint64_t>(r);
  return d;
}

namespace {

std::map<std::int64_t, std::vector<VertexId>> clusters_of(const Decomposition& d) {
  std::map<std::int64_t, std::vector<VertexId>> out;
  for (std::size_t v = 0; v < d.cluster.size(); ++v) out[d.cluster[v]].push_back(static_cast<VertexId>(v));
  return out;
}

int weak_diameter(const Graph& gr, const std::vector<VertexId>& members) {
  int worst = 0;
  for (VertexId u : members) {
    auto dist = bfs_distances(gr, u, gr.vertex_count());
    for (VertexId w : members) {
      int x = dist[static_cast<std::size_t>(w)];
      worst = std::max(worst, x < 0 ? gr.vertex_count() : x);
    }
  }
  return worst;
}

}  // namespace

DecompositionReport check_decomposition(const Graph& g, const Decomposition& d) {
  DecompositionReport rep;
  auto bad = [&](std::string m) {
    rep.ok = false;
    if (rep.violations.size() < 50) rep.violations.push_back(std::move(m));
  };
  Graph gr = power_graph(g, d.r);
  rep.colors = d.colors;
  rep.color_bound = color_bound(g.vertex_count());
  rep.diameter_bound = 2 * d.radius_cap;
  if (rep.colors > rep.color_bound) bad("too many colors: " + std::to_string(rep.colors));
  for (const Edge& e : gr.edges()) {
    auto u = static_cast<std::size_t>(e.u), w = static_cast<std::size_t>(e.v);
    if (d.cluster[u] != d.cluster[w] && d.color[u] == d.color[w])
      bad("adjacent clusters of vertices " + std::to_string(e.u) + " and " + std::to_string(e.v) + " share a color");
  }
  for (const auto& [id, members] : clusters_of(d)) {
    for (VertexId v : members)
      if (d.color[static_cast<std::size_t>(v)] != d.color[static_cast<std::size_t>(members[0])])
        bad("cluster " + std::to_string(id) + " has mixed colors");
    int wd = weak_diameter(gr, members);
    rep.max_weak_diameter = std::max(rep.max_weak_diameter, wd);
    if (wd > rep.diameter_bound) bad("cluster " + std::to_string(id) + " has weak diameter " + std::to_string(wd));
  }
  return rep;
}

DistributedPtasResult ptas_distributed(const Graph& g, const PtasOptions& options) {
  check_params(options.k, options.epsilon);
  const int k = options.k;
  DistributedPtasResult out;
  const int r = power_radius(g, k, options.epsilon);
  out.decomposition = network_decomposition(g, r, options.seed, options.threads);
  const Decomposition& d = out.decomposition;
  Graph gr = power_graph(g, r);

  PtasResult& res = out.run;
  res.increment_cap = radius_increment_cap(g, options.epsilon);
  const EdgeSubset targets = coverable_targets(g, k, res);
  State state{EdgeSubset(static_cast<std::size_t>(g.edge_count())), targets};
  auto clusters = clusters_of(d);
  for (int c = 0; c < d.colors; ++c) {
    const State snapshot = state;
    int widest = 0;
    std::vector<PtasStep> steps;
    for (const auto& [id, members] : clusters) {
      if (d.color[static_cast<std::size_t>(members[0])] != c) continue;
      widest = std::max(widest, weak_diameter(gr, members));
      State local = snapshot;
      for (VertexId v : members) steps.push_back(run_step(g, v, k, options.epsilon, res.increment_cap, local, options.budget, res));
      state.h |= local.h;
    }
    if (steps.empty()) continue;
    state.uncovered -= covered_edges(g, state.h, k, state.uncovered);
    std::sort(steps.begin(), steps.end(), [](const PtasStep& a, const PtasStep& b) { return a.v < b.v; });
    for (auto& st : steps) {
      res.order.push_back(st.v);
      res.steps.push_back(std::move(st));
    }
    out.gather_rounds += static_cast<std::uint64_t>(widest + 1) * static_cast<std::uint64_t>(r);
  }
  res.h = state.h;
  finish(g, k, targets, res);
  out.base_rounds = d.base_rounds + out.gather_rounds;

  auto seq = ptas_sequential(g, k, options.epsilon, res.order, options.budget);
  out.matches_sequential = seq.h == res.h && seq.steps.size() == res.steps.size();
  for (std::size_t i = 0; out.matches_sequential && i < seq.steps.size(); ++i) {
    const auto &a = seq.steps[i], &b = res.steps[i];
    out.matches_sequential = a.v == b.v && a.radius == b.radius && a.g_inner == b.g_inner && a.g_outer == b.g_outer &&
                             a.inner_uncovered == b.inner_uncovered;
  }
  if (!out.matches_sequential) note(res, "color-phased run differs from the sequential run in the same order");
  return out;
}

nlohmann::json to_json(const PtasResult& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"v", s.v}, {"radius", s.radius}, {"failed", s.failed}, {"g_inner", s.g_inner},
                     {"g_outer", s.g_outer}, {"inner_uncovered", s.inner_uncovered.size()}});
  return {{"ok", r.ok}, {"violations", r.violations}, {"spanner_edges", r.h.count()}, {"order", r.order},
          {"increment_cap", r.increment_cap}, {"uncoverable", r.uncoverable}, {"steps", steps}};
}

nlohmann::json to_json(const DecompositionReport& r) {
  return {{"ok", r.ok}, {"violations", r.violations}, {"colors", r.colors}, {"color_bound", r.color_bound},
          {"max_weak_diameter", r.max_weak_diameter}, {"diameter_bound", r.diameter_bound}};
}

}  // namespace spandist
