#include "spandist/exact.hpp"

#include "spandist/verify.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <bit>
#include <numeric>

namespace spandist {

namespace {

using Bits = boost::dynamic_bitset<>;
using Clock = std::chrono::steady_clock;

class Meter {
 public:
  explicit Meter(const OracleBudget& b) : budget_(b), start_(Clock::now()) {}
  void tick() {
    ++nodes_;
    if (nodes_ > budget_.max_nodes) throw BudgetExceeded("nodes", std::to_string(budget_.max_nodes) + " search nodes");
    if ((nodes_ & 0xfff) == 0) {
      std::chrono::duration<double> s = Clock::now() - start_;
      if (s.count() > budget_.time_cap_seconds)
        throw BudgetExceeded("time", std::to_string(budget_.time_cap_seconds) + " s");
    }
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  OracleBudget budget_;
  Clock::time_point start_;
  std::uint64_t nodes_ = 0;
};

class CoverSearch {
 public:
  CoverSearch(std::vector<std::vector<Bits>> paths, std::vector<Weight> cost, Meter& meter)
      : paths_(std::move(paths)), cost_(std::move(cost)), meter_(meter) {}

  // Optimum from a starting assignment; nullopt when infeasible.
  std::optional<std::pair<Weight, Bits>> optimize(Bits in, Bits out) {
    feasibility_ = false;
    have_ = false;
    greedy(in, out);
    run(std::move(in), std::move(out));
    if (!have_) return std::nullopt;
    return std::make_pair(best_, best_set_);
  }

  // Some completion of cost <= bound?
  bool feasible(Bits in, Bits out, Weight bound) {
    feasibility_ = true;
    found_ = false;
    bound_ = bound;
    run(std::move(in), std::move(out));
    return found_;
  }

  Weight cost_of(const Bits& s) const {
    Weight c = 0;
    for (auto i = s.find_first(); i != Bits::npos; i = s.find_next(i)) c += cost_[i];
    return c;
  }

 private:
  struct Open {
    std::size_t target;
    std::vector<std::size_t> alive;
    Weight cheapest;
    Bits free;
  };

  // false when some target has no surviving path.
  bool propagate(Bits& in, const Bits& out, std::vector<Open>& open) {
    for (;;) {
      open.clear();
      bool changed = false;
      for (std::size_t t = 0; t < paths_.size(); ++t) {
        Open o{t, {}, 0, Bits(cost_.size())};
        bool done = false;
        for (std::size_t p = 0; p < paths_[t].size(); ++p) {
          const Bits& path = paths_[t][p];
          if (path.intersects(out)) continue;
          if (path.is_subset_of(in)) {
            done = true;
            break;
          }
          o.alive.push_back(p);
        }
        if (done) continue;
        if (o.alive.empty()) return false;
        if (o.alive.size() == 1) {
          in |= paths_[t][o.alive[0]];
          changed = true;
          continue;
        }
        open.push_back(std::move(o));
      }
      if (!changed) break;
    }
    for (Open& o : open) {
      bool first = true;
      for (std::size_t p : o.alive) {
        Bits f = paths_[o.target][p] - in;
        Weight c = cost_of(f);
        if (first || c < o.cheapest) o.cheapest = c;
        first = false;
        o.free |= f;
      }
    }
    return true;
  }

  Weight packing_bound(std::vector<Open>& open) const {
    std::vector<std::size_t> order(open.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return open[a].cheapest > open[b].cheapest; });
    Bits used(cost_.size());
    Weight lb = 0;
    for (std::size_t i : order) {
      if (open[i].free.intersects(used)) continue;
      used |= open[i].free;
      lb += open[i].cheapest;
    }
    return lb;
  }

  void greedy(Bits in, const Bits& out) {
    std::vector<Open> open;
    for (;;) {
      if (!propagate(in, out, open)) return;
      if (open.empty()) break;
      const Open& o = open.front();
      std::size_t pick = o.alive[0];
      Weight pc = cost_of(paths_[o.target][pick] - in);
      for (std::size_t p : o.alive) {
        Weight c = cost_of(paths_[o.target][p] - in);
        if (c < pc) {
          pc = c;
          pick = p;
        }
      }
      in |= paths_[o.target][pick];
    }
    best_ = cost_of(in);
    best_set_ = in;
    have_ = true;
  }

  void run(Bits in, Bits out) {
    meter_.tick();
    std::vector<Open> open;
    if (!propagate(in, out, open)) return;
    const Weight c = cost_of(in);
    if (feasibility_ ? c > bound_ : (have_ && c >= best_)) return;
    if (open.empty()) {
      if (feasibility_) {
        found_ = true;
      } else {
        best_ = c;
        best_set_ = in;
        have_ = true;
      }
      return;
    }
    const Weight lb = c + packing_bound(open);
    if (feasibility_ ? lb > bound_ : (have_ && lb >= best_)) return;

    const Open* o = &open[0];
    for (const Open& x : open)
      if (x.alive.size() < o->alive.size()) o = &x;
    std::vector<int> freq(cost_.size(), 0);
    for (std::size_t p : o->alive) {
      Bits f = paths_[o->target][p] - in;
      for (auto i = f.find_first(); i != Bits::npos; i = f.find_next(i)) ++freq[i];
    }
    std::size_t e = 0;
    for (std::size_t i = 0; i < freq.size(); ++i)
      if (freq[i] > freq[e]) e = i;

    Bits with = in;
    with.set(e);
    run(std::move(with), out);
    if (feasibility_ && found_) return;
    out.set(e);
    run(std::move(in), std::move(out));
  }

  std::vector<std::vector<Bits>> paths_;
  std::vector<Weight> cost_;
  Meter& meter_;
  bool feasibility_ = false;
  bool found_ = false;
  Weight bound_ = 0;
  bool have_ = false;
  Weight best_ = 0;
  Bits best_set_;
};

void enumerate_paths(const Graph& g, const std::vector<int>& local, VertexId at, VertexId goal, int left,
                     std::vector<char>& seen, Bits& path, std::vector<Bits>& out, std::size_t cap) {
  auto arcs = g.directed() ? g.out_edges(at) : g.incident(at);
  for (EdgeId e : arcs) {
    int li = local[static_cast<std::size_t>(e)];
    if (li < 0) continue;
    VertexId nx = g.other(e, at);
    if (seen[static_cast<std::size_t>(nx)]) continue;
    path.set(static_cast<std::size_t>(li));
    if (nx == goal) {
      out.push_back(path);
      if (out.size() > cap) throw BudgetExceeded("paths", "more than " + std::to_string(cap) + " covering paths");
    } else if (left > 1) {
      seen[static_cast<std::size_t>(nx)] = 1;
      enumerate_paths(g, local, nx, goal, left - 1, seen, path, out, cap);
      seen[static_cast<std::size_t>(nx)] = 0;
    }
    path.reset(static_cast<std::size_t>(li));
  }
}

struct Prepared {
  std::vector<EdgeId> global;  // local -> edge id, ascending
  std::vector<int> local;
  std::vector<Weight> cost;
  std::vector<std::vector<Bits>> paths;
  std::vector<EdgeId> stranded;  // targets with no path
};

Prepared prepare(const Graph& g, int k, const EdgeSubset& targets, const EdgeSubset& usable, bool weighted,
                 const OracleBudget& budget) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (g.vertex_count() > budget.max_vertices)
    throw BudgetExceeded("vertices", std::to_string(g.vertex_count()) + " > " + std::to_string(budget.max_vertices));
  Prepared p;
  p.local.assign(static_cast<std::size_t>(g.edge_count()), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (usable.test(e)) {
      p.local[static_cast<std::size_t>(e)] = static_cast<int>(p.global.size());
      p.global.push_back(e);
      p.cost.push_back(weighted ? g.edge(e).weight : 1);
    }
  if (static_cast<EdgeId>(p.global.size()) > budget.max_edges)
    throw BudgetExceeded("edges", std::to_string(p.global.size()) + " > " + std::to_string(budget.max_edges));
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::size_t total = 0;
  for (EdgeId t : targets.ids()) {
    const Edge& x = g.edge(t);
    std::vector<Bits> ps;
    Bits path(p.global.size());
    seen[static_cast<std::size_t>(x.u)] = 1;
    enumerate_paths(g, p.local, x.u, x.v, k, seen, path, ps, budget.max_paths);
    seen[static_cast<std::size_t>(x.u)] = 0;
    total += ps.size();
    if (total > budget.max_paths) throw BudgetExceeded("paths", "more than " + std::to_string(budget.max_paths));
    if (ps.empty()) p.stranded.push_back(t);
    else p.paths.push_back(std::move(ps));
  }
  return p;
}

}  // namespace

SpannerOptimum min_cover_exact(const Graph& g, int k, const EdgeSubset& targets, const EdgeSubset& usable,
                               bool weighted, const OracleBudget& budget, bool canonical) {
  Prepared p = prepare(g, k, targets, usable, weighted, budget);
  if (!p.stranded.empty()) throw InfeasibleInstance(p.stranded);
  Meter meter(budget);
  const std::size_t u = p.global.size();
  CoverSearch search(std::move(p.paths), p.cost, meter);
  Bits in(u), out(u);
  for (std::size_t i = 0; i < u; ++i)
    if (p.cost[i] == 0) in.set(i);  // free edges never hurt
  auto best = search.optimize(in, out);
  if (!best) throw std::logic_error("cover search found no solution");
  Bits chosen = best->second;
  if (canonical) {
    // Include-first decisions in id order.
    for (std::size_t i = 0; i < u; ++i) {
      if (in.test(i)) continue;
      Bits trial = in;
      trial.set(i);
      if (search.feasible(trial, out, best->first)) in = trial;
      else out.set(i);
    }
    chosen = in;
  }
  SpannerOptimum r;
  r.cost = best->first;
  r.witness = EdgeSubset(static_cast<std::size_t>(g.edge_count()));
  for (auto i = chosen.find_first(); i != Bits::npos; i = chosen.find_next(i)) r.witness.set(p.global[i]);
  r.nodes = meter.nodes();
  if (search.cost_of(chosen) != r.cost) throw std::logic_error("canonical witness changed the optimum");
  return r;
}

SpannerOptimum min_spanner_exact(const Graph& g, int k, Variant variant, const OracleBudget& budget, bool canonical,
                                 bool skip_uncoverable) {
  switch (variant) {
    case Variant::directed:
      if (!g.directed()) throw std::invalid_argument("directed variant needs a directed graph");
      break;
    case Variant::client_server:
      if (!g.client_server()) throw std::invalid_argument("client-server variant needs edge flags");
      break;
    default:
      if (g.directed() || g.client_server()) throw std::invalid_argument("variant does not fit the graph");
  }
  EdgeSubset targets = g.targets();
  if (skip_uncoverable && variant == Variant::client_server) targets &= coverable_client_edges(g, k);
  return min_cover_exact(g, k, targets, g.usable(), variant == Variant::weighted, budget, canonical);
}

SpannerOptimum min_spanner_reduction_instance(const Graph& gs, const OracleBudget& budget) {
  if (gs.directed() || gs.vertex_count() % 3 != 0) throw std::invalid_argument("not a reduction graph");
  const VertexId n = gs.vertex_count() / 3;
  if (n > 30) throw BudgetExceeded("vertices", "reduction source larger than 30 vertices");
  auto w = [&](VertexId a, VertexId b) -> std::optional<Weight> {
    auto e = gs.find_edge(a, b);
    if (!e) return std::nullopt;
    return gs.edge(*e).weight;
  };
  EdgeSubset base(static_cast<std::size_t>(gs.edge_count()));
  for (VertexId v = 0; v < n; ++v)
    if (w(3 * v, 3 * v + 1) != 1 || w(3 * v, 3 * v + 2) != 0 || w(3 * v + 1, 3 * v + 2) != 0)
      throw std::invalid_argument("vertex triangles do not match the reduction layout");
  for (EdgeId e = 0; e < gs.edge_count(); ++e)
    if (gs.edge(e).weight == 0) base.set(e);
  Meter meter(budget);
  // Subsets by increasing size; the first valid one is optimal.
  for (VertexId size = 0; size <= n; ++size) {
    std::vector<int> pick(static_cast<std::size_t>(n), 0);
    std::fill(pick.end() - size, pick.end(), 1);
    do {
      meter.tick();
      EdgeSubset h = base;
      for (VertexId v = 0; v < n; ++v)
        if (pick[static_cast<std::size_t>(v)]) h.set(*gs.find_edge(3 * v, 3 * v + 1));
      if (verify_spanner(gs, h, 2).valid) {
        SpannerOptimum r;
        r.cost = size;
        r.witness = h;
        r.nodes = meter.nodes();
        return r;
      }
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  throw std::logic_error("no canonical spanner found");
}

namespace {

using Mask = std::uint64_t;

Mask bit(VertexId v) { return Mask{1} << v; }

std::vector<Mask> adjacency(const Graph& g, const OracleBudget& budget) {
  if (g.directed()) throw std::invalid_argument("vertex problems need an undirected graph");
  if (g.vertex_count() > 64 || g.vertex_count() > budget.max_vertices)
    throw BudgetExceeded("vertices", "vertex oracles handle at most 64 vertices");
  std::vector<Mask> adj(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.u)] |= bit(e.v);
    adj[static_cast<std::size_t>(e.v)] |= bit(e.u);
  }
  return adj;
}

std::vector<VertexId> members(Mask m) {
  std::vector<VertexId> out;
  while (m) {
    out.push_back(static_cast<VertexId>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

struct CoverState {
  const std::vector<Mask>& adj;
  Meter& meter;
  int best;
  Mask best_set;

  void run(Mask in, Mask out) {
    meter.tick();
    const auto n = static_cast<VertexId>(adj.size());
    // Excluded vertices force their neighbours in.
    for (bool changed = true; changed;) {
      changed = false;
      for (VertexId v : members(out)) {
        Mask need = adj[static_cast<std::size_t>(v)] & ~in;
        if (need & out) return;
        if (need) {
          in |= need;
          changed = true;
        }
      }
    }
    const int size = std::popcount(in);
    if (size >= best) return;
    Mask open = ~(in | out) & (n == 64 ? ~Mask{0} : bit(n) - 1);
    // Residual edges among undecided vertices; greedy matching bound.
    int matching = 0;
    Mask used = 0;
    VertexId pick = -1;
    int pick_deg = 0;
    for (VertexId v : members(open)) {
      Mask nb = adj[static_cast<std::size_t>(v)] & open;
      int d = std::popcount(nb);
      if (d > pick_deg) {
        pick_deg = d;
        pick = v;
      }
      if (!(used & bit(v)) && (nb & ~used)) {
        VertexId u = static_cast<VertexId>(std::countr_zero(nb & ~used));
        used |= bit(v) | bit(u);
        ++matching;
      }
    }
    if (pick < 0) {
      best = size;
      best_set = in;
      return;
    }
    if (size + matching >= best) return;
    run(in | bit(pick), out);
    run(in, out | bit(pick));
  }
};

struct DominationState {
  const std::vector<Mask>& closed;
  Mask all;
  Meter& meter;
  int best;
  Mask best_set;

  void run(Mask chosen, Mask excluded, Mask dominated) {
    meter.tick();
    const int size = std::popcount(chosen);
    if (dominated == all) {
      if (size < best) {
        best = size;
        best_set = chosen;
      }
      return;
    }
    if (size + 1 >= best) return;
    Mask undominated = all & ~dominated;
    int reach = 0;
    for (VertexId x : members(all & ~excluded & ~chosen))
      reach = std::max(reach, std::popcount(closed[static_cast<std::size_t>(x)] & undominated));
    if (reach == 0) return;
    int need = (std::popcount(undominated) + reach - 1) / reach;
    if (size + need >= best) return;
    VertexId target = -1;
    int options = 1 << 30;
    for (VertexId u : members(undominated)) {
      int o = std::popcount(closed[static_cast<std::size_t>(u)] & ~excluded);
      if (o < options) {
        options = o;
        target = u;
      }
    }
    if (options == 0) return;
    for (VertexId x : members(closed[static_cast<std::size_t>(target)] & ~excluded)) {
      run(chosen | bit(x), excluded, dominated | closed[static_cast<std::size_t>(x)]);
      excluded |= bit(x);
    }
  }
};

}  // namespace

VertexOptimum min_vertex_cover_exact(const Graph& g, const OracleBudget& budget) {
  auto adj = adjacency(g, budget);
  Meter meter(budget);
  CoverState s{adj, meter, g.vertex_count() + 1, 0};
  s.run(0, 0);
  VertexOptimum r;
  r.size = static_cast<std::size_t>(s.best);
  r.witness = members(s.best_set);
  r.nodes = meter.nodes();
  return r;
}

VertexOptimum min_dominating_set_exact(const Graph& g, const OracleBudget& budget) {
  auto adj = adjacency(g, budget);
  const auto n = static_cast<VertexId>(adj.size());
  std::vector<Mask> closed(adj.size());
  for (VertexId v = 0; v < n; ++v) closed[static_cast<std::size_t>(v)] = adj[static_cast<std::size_t>(v)] | bit(v);
  Meter meter(budget);
  Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
  DominationState s{closed, all, meter, n + 1, all};
  s.run(0, 0, 0);
  VertexOptimum r;
  r.size = static_cast<std::size_t>(s.best);
  r.witness = members(s.best_set);
  r.nodes = meter.nodes();
  return r;
}

SubsetDensity densest_subgraph_brute(int n, const std::vector<std::pair<int, int>>& edges,
                                     const std::vector<Weight>& weights) {
  if (n < 1 || n > 24) throw std::invalid_argument("brute force handles 1..24 vertices");
  if (!weights.empty() && static_cast<int>(weights.size()) != n) throw std::invalid_argument("weight count");
  for (Weight w : weights)
    if (w <= 0) throw std::invalid_argument("brute force needs positive weights");
  SubsetDensity best;
  bool have = false;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::int64_t inside = 0;
    for (auto [a, b] : edges)
      if ((mask >> a & 1) && (mask >> b & 1)) ++inside;
    Weight w = 0;
    std::vector<int> s;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) {
        s.push_back(v);
        w += weights.empty() ? 1 : weights[static_cast<std::size_t>(v)];
      }
    Ratio d(inside, w);
    bool better = !have || d > best.density ||
                  (d == best.density && (s.size() < best.subset.size() || (s.size() == best.subset.size() && s < best.subset)));
    if (better) {
      best = {s, d};
      have = true;
    }
  }
  return best;
}

DirectedStarOptimum directed_star_density_exact(const StarProblem& p) {
  if (!p.directed) throw std::invalid_argument("directed star problem expected");
  std::vector<int> ins, outs;
  for (std::size_t i = 0; i < p.slots.size(); ++i)
    (p.slots[i].outgoing ? outs : ins).push_back(static_cast<int>(i));
  if (ins.size() > 24) throw std::invalid_argument("too many in-arcs for enumeration");
  std::vector<int> pos(p.slots.size(), -1);
  for (std::size_t i = 0; i < ins.size(); ++i) pos[static_cast<std::size_t>(ins[i])] = static_cast<int>(i);
  DirectedStarOptimum best{Ratio(0), {}};
  for (std::uint32_t a = 0; a < (1u << ins.size()); ++a) {
    std::vector<std::int64_t> gain(p.slots.size(), 0);
    for (const auto& pr : p.pairs)
      if (a >> pos[static_cast<std::size_t>(pr.in)] & 1) ++gain[static_cast<std::size_t>(pr.out)];
    std::vector<int> order = outs;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return gain[static_cast<std::size_t>(x)] > gain[static_cast<std::size_t>(y)];
    });
    const auto base = std::popcount(a);
    std::int64_t spanned = 0;
    for (std::size_t j = 0; j < order.size(); ++j) {
      spanned += gain[static_cast<std::size_t>(order[j])];
      Ratio d(spanned, base + static_cast<std::int64_t>(j) + 1);
      if (d > best.density) {
        best.density = d;
        best.slots.clear();
        for (std::size_t i = 0; i < ins.size(); ++i)
          if (a >> i & 1) best.slots.push_back(ins[i]);
        best.slots.insert(best.slots.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        std::sort(best.slots.begin(), best.slots.end());
      }
    }
  }
  return best;
}

}  // namespace spandist
