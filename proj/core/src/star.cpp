#include "spandist/star.hpp"

#include "spandist/densest.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace spandist {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::undirected: return "undirected";
    case Variant::directed: return "directed";
    case Variant::weighted: return "weighted";
    case Variant::client_server: return "client-server";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  if (s == "undirected" || s == "plain") return Variant::undirected;
  if (s == "directed") return Variant::directed;
  if (s == "weighted") return Variant::weighted;
  if (s == "client-server" || s == "cs") return Variant::client_server;
  throw std::invalid_argument("unknown variant '" + s + "'");
}

Variant natural_variant(const Graph& g) {
  if (g.directed()) return Variant::directed;
  if (g.client_server()) return Variant::client_server;
  if (g.weighted()) return Variant::weighted;
  return Variant::undirected;
}

std::string to_string(ChoiceKind k) {
  switch (k) {
    case ChoiceKind::fresh: return "fresh";
    case ChoiceKind::kept: return "kept";
    case ChoiceKind::rebuilt: return "rebuilt";
  }
  return "?";
}

namespace {

void check_variant(const Graph& g, Variant variant) {
  bool ok = true;
  switch (variant) {
    case Variant::directed: ok = g.directed(); break;
    case Variant::client_server: ok = !g.directed() && g.client_server(); break;
    case Variant::weighted: ok = !g.directed() && !g.client_server(); break;
    case Variant::undirected: ok = !g.directed() && !g.client_server(); break;
  }
  if (!ok) throw std::invalid_argument("variant " + to_string(variant) + " does not fit the graph");
}

Ratio ratio_or_zero(std::int64_t num, Weight den) { return den > 0 ? Ratio(num, den) : Ratio(0); }

std::vector<char> full_mask(const StarProblem& p, const std::vector<char>& pool) {
  return pool.empty() ? std::vector<char>(p.slots.size(), 1) : pool;
}

std::vector<std::vector<int>> slot_pairs(const StarProblem& p) {
  std::vector<std::vector<int>> inc(p.slots.size());
  for (std::size_t i = 0; i < p.pairs.size(); ++i) {
    inc[static_cast<std::size_t>(p.pairs[i].in)].push_back(static_cast<int>(i));
    inc[static_cast<std::size_t>(p.pairs[i].out)].push_back(static_cast<int>(i));
  }
  return inc;
}

}  // namespace

StarProblem make_star_problem(const Graph& g, VertexId v, const EdgeSubset& uncovered, Variant variant) {
  check_variant(g, variant);
  StarProblem p;
  p.center = v;
  p.directed = variant == Variant::directed;
  const bool cs = variant == Variant::client_server;
  for (EdgeId e : g.incident(v)) {
    const Edge& x = g.edge(e);
    if (cs && !x.server) continue;
    StarSlot s;
    s.edge = e;
    s.leaf = g.other(e, v);
    s.cost = variant == Variant::weighted ? x.weight : 1;
    s.outgoing = p.directed && x.u == v;
    p.slots.push_back(s);
  }
  std::sort(p.slots.begin(), p.slots.end(), [](const StarSlot& a, const StarSlot& b) {
    return a.leaf != b.leaf ? a.leaf < b.leaf : a.outgoing < b.outgoing;
  });
  std::unordered_map<VertexId, int> out_slot;
  for (std::size_t i = 0; i < p.slots.size(); ++i)
    if (!p.directed || p.slots[i].outgoing) out_slot[p.slots[i].leaf] = static_cast<int>(i);
  for (std::size_t i = 0; i < p.slots.size(); ++i) {
    const StarSlot& s = p.slots[i];
    if (p.directed && s.outgoing) continue;
    VertexId a = s.leaf;
    for (EdgeId e : g.out_edges(a)) {
      if (!uncovered.test(e)) continue;
      const Edge& x = g.edge(e);
      if (cs && !x.client) continue;
      VertexId b = g.other(e, a);
      if (b == v) continue;
      if (!p.directed && b < a) continue;
      auto it = out_slot.find(b);
      if (it == out_slot.end()) continue;
      p.pairs.push_back({static_cast<int>(i), it->second});
    }
  }
  return p;
}

std::vector<EdgeId> spanned_edges(const Graph& g, const StarProblem& p, const std::vector<int>& slots) {
  std::vector<char> in(p.slots.size(), 0);
  for (int s : slots) in[static_cast<std::size_t>(s)] = 1;
  std::vector<EdgeId> out;
  for (const auto& pr : p.pairs) {
    if (!in[static_cast<std::size_t>(pr.in)] || !in[static_cast<std::size_t>(pr.out)]) continue;
    auto e = g.find_edge(p.slots[static_cast<std::size_t>(pr.in)].leaf,
                         p.slots[static_cast<std::size_t>(pr.out)].leaf);
    if (!e) throw std::logic_error("spannable pair without a host edge");
    out.push_back(*e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SlotChoice evaluate_slots(const StarProblem& p, std::vector<int> slots) {
  std::sort(slots.begin(), slots.end());
  slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
  std::vector<char> in(p.slots.size(), 0);
  SlotChoice c;
  for (int s : slots) {
    in[static_cast<std::size_t>(s)] = 1;
    c.cost += p.slots[static_cast<std::size_t>(s)].cost;
  }
  for (const auto& pr : p.pairs)
    if (in[static_cast<std::size_t>(pr.in)] && in[static_cast<std::size_t>(pr.out)]) ++c.spanned;
  c.density = ratio_or_zero(c.spanned, c.cost);
  c.slots = std::move(slots);
  return c;
}

SlotChoice densest_slots(const StarProblem& p, const std::vector<char>& pool_mask, bool tie_break) {
  auto pool = full_mask(p, pool_mask);
  DensestInput in;
  std::vector<int> leaf_of(p.slots.size(), -1);
  std::vector<std::vector<int>> members;  // leaf index -> slots
  for (std::size_t i = 0; i < p.slots.size(); ++i) {
    if (!pool[i]) continue;
    const StarSlot& s = p.slots[i];
    if (p.directed && !in.label.empty() && in.label.back() == s.leaf) {
      leaf_of[i] = static_cast<int>(in.label.size()) - 1;
      members.back().push_back(static_cast<int>(i));
      continue;
    }
    leaf_of[i] = static_cast<int>(in.label.size());
    in.label.push_back(s.leaf);
    in.cost.push_back(p.directed ? 1 : s.cost);
    members.push_back({static_cast<int>(i)});
  }
  if (in.label.empty()) throw std::invalid_argument("center has no incident edge in the pool");
  for (const auto& pr : p.pairs) {
    int a = leaf_of[static_cast<std::size_t>(pr.in)], b = leaf_of[static_cast<std::size_t>(pr.out)];
    if (a < 0 || b < 0) continue;
    in.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  if (p.directed) {
    std::sort(in.edges.begin(), in.edges.end());
    in.edges.erase(std::unique(in.edges.begin(), in.edges.end()), in.edges.end());
  }
  DensestOutput out = densest_subset(in, tie_break);
  std::vector<int> slots;
  for (int leaf : out.members)
    for (int s : members[static_cast<std::size_t>(leaf)]) slots.push_back(s);
  SlotChoice c = evaluate_slots(p, std::move(slots));
  c.undirected_density = out.density;
  return c;
}

namespace {

void grow(const StarProblem& p, const std::vector<std::vector<int>>& inc, const std::vector<char>& pool,
          const Ratio& threshold, SlotChoice& s) {
  std::vector<char> in(p.slots.size(), 0);
  for (int x : s.slots) in[static_cast<std::size_t>(x)] = 1;
  for (;;) {
    int best = -1;
    std::int64_t best_gain = -1;
    for (std::size_t i = 0; i < p.slots.size(); ++i) {
      if (!pool[i] || in[i]) continue;
      std::int64_t gain = 0;
      for (int pi : inc[i]) {
        const auto& pr = p.pairs[static_cast<std::size_t>(pi)];
        int other = pr.in == static_cast<int>(i) ? pr.out : pr.in;
        if (in[static_cast<std::size_t>(other)]) ++gain;
      }
      if (ratio_or_zero(s.spanned + gain, s.cost + p.slots[i].cost) < threshold) continue;
      if (gain > best_gain) {
        best = static_cast<int>(i);
        best_gain = gain;
      }
    }
    if (best >= 0) {
      in[static_cast<std::size_t>(best)] = 1;
      s.slots.push_back(best);
      s.spanned += best_gain;
      s.cost += p.slots[static_cast<std::size_t>(best)].cost;
      s.density = ratio_or_zero(s.spanned, s.cost);
      continue;
    }
    std::vector<char> rest(p.slots.size(), 0);
    bool any = false;
    for (std::size_t i = 0; i < p.slots.size(); ++i) {
      rest[i] = pool[i] && !in[i];
      any |= rest[i] != 0;
    }
    if (!any) break;
    SlotChoice d = densest_slots(p, rest, false);
    if (d.density < threshold) break;
    for (int x : d.slots) {
      in[static_cast<std::size_t>(x)] = 1;
      s.slots.push_back(x);
    }
    s = evaluate_slots(p, s.slots);
  }
  std::sort(s.slots.begin(), s.slots.end());
}

}  // namespace

ChoiceResult choose_slots(const StarProblem& p, const std::vector<int>* prev, Rounded now) {
  const Ratio threshold = now.fraction(p.directed ? 3 : 2);
  const auto inc = slot_pairs(p);
  ChoiceResult r;
  if (prev) {
    SlotChoice kept = evaluate_slots(p, *prev);
    if (kept.slots.empty()) throw std::invalid_argument("previous star is empty");
    if (kept.density >= threshold) {
      r.choice = std::move(kept);
      r.kind = ChoiceKind::kept;
      return r;
    }
    std::vector<char> pool(p.slots.size(), 0);
    for (int x : kept.slots) pool[static_cast<std::size_t>(x)] = 1;
    SlotChoice d = densest_slots(p, pool);
    if (d.density < threshold)
      throw StarChoiceFailure("no star inside the previous star reaches density " + threshold.str() +
                              " at center " + std::to_string(p.center));
    grow(p, inc, pool, threshold, d);
    r.choice = std::move(d);
    r.kind = ChoiceKind::rebuilt;
    return r;
  }
  std::vector<char> pool(p.slots.size(), 1);
  SlotChoice d = densest_slots(p, pool);
  if (d.density < threshold)
    throw std::logic_error("densest star below the choice threshold at center " + std::to_string(p.center));
  grow(p, inc, pool, threshold, d);
  r.choice = std::move(d);
  r.kind = ChoiceKind::fresh;
  return r;
}

DensityValue density_of(const Graph& g, const Star& star, const EdgeSubset& uncovered, Variant variant) {
  check_variant(g, variant);
  if (star.edges.empty()) throw std::invalid_argument("empty star");
  const VertexId v = star.center;
  const bool directed = variant == Variant::directed;
  std::unordered_set<VertexId> in_leaves, out_leaves;
  DensityValue d;
  for (EdgeId e : star.edges) {
    const Edge& x = g.edge(e);
    if (x.u != v && x.v != v) throw std::invalid_argument("star edge not incident to its center");
    VertexId leaf = g.other(e, v);
    if (!directed || x.v == v) in_leaves.insert(leaf);
    if (!directed || x.u == v) out_leaves.insert(leaf);
    d.den += variant == Variant::weighted ? x.weight : 1;
  }
  for (VertexId a : in_leaves)
    for (EdgeId e : g.out_edges(a)) {
      if (!uncovered.test(e)) continue;
      if (variant == Variant::client_server && !g.edge(e).client) continue;
      VertexId b = g.other(e, a);
      if (!directed && b < a) continue;
      if (out_leaves.count(b)) d.spanned.push_back(e);
    }
  std::sort(d.spanned.begin(), d.spanned.end());
  d.spanned.erase(std::unique(d.spanned.begin(), d.spanned.end()), d.spanned.end());
  d.num = static_cast<std::int64_t>(d.spanned.size());
  d.rho = ratio_or_zero(d.num, d.den);
  d.rounded = Rounded::of(d.rho);
  return d;
}

namespace {

Star to_star(const StarProblem& p, const std::vector<int>& slots) {
  Star s;
  s.center = p.center;
  for (int x : slots) s.edges.push_back(p.slots[static_cast<std::size_t>(x)].edge);
  std::sort(s.edges.begin(), s.edges.end());
  return s;
}

std::vector<int> to_slots(const StarProblem& p, const Star& s) {
  std::vector<int> out;
  for (EdgeId e : s.edges) {
    auto it = std::find_if(p.slots.begin(), p.slots.end(), [&](const StarSlot& x) { return x.edge == e; });
    if (it == p.slots.end()) throw std::invalid_argument("star edge " + std::to_string(e) + " is not a usable slot");
    out.push_back(static_cast<int>(it - p.slots.begin()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

StarResult densest_star(const Graph& g, VertexId v, const EdgeSubset& uncovered,
                        const std::optional<EdgeSubset>& pool, Variant variant) {
  StarProblem p = make_star_problem(g, v, uncovered, variant);
  std::vector<char> mask(p.slots.size(), 1);
  if (pool)
    for (std::size_t i = 0; i < p.slots.size(); ++i) mask[i] = pool->test(p.slots[i].edge);
  if (std::find(mask.begin(), mask.end(), 1) == mask.end())
    throw std::invalid_argument("vertex " + std::to_string(v) + " has no incident edge in the pool");
  SlotChoice c = densest_slots(p, mask);
  StarResult r;
  r.star = to_star(p, c.slots);
  r.density = density_of(g, r.star, uncovered, variant);
  return r;
}

ChosenStar choose_star(const Graph& g, VertexId v, const EdgeSubset& uncovered_now,
                       const std::optional<PreviousStar>& prev, Rounded now, Variant variant) {
  StarProblem p = make_star_problem(g, v, uncovered_now, variant);
  if (p.slots.empty()) throw std::invalid_argument("vertex " + std::to_string(v) + " has no usable edge");
  std::vector<int> prev_slots;
  bool use_prev = prev && prev->rounded == now;
  if (use_prev) {
    if (prev->star.center != v) throw std::invalid_argument("previous star has another center");
    prev_slots = to_slots(p, prev->star);
  }
  ChoiceResult r = choose_slots(p, use_prev ? &prev_slots : nullptr, now);
  return {to_star(p, r.choice.slots), r.kind};
}

DirectedEstimate directed_density_estimate(const Graph& g, VertexId v, const EdgeSubset& uncovered) {
  StarProblem p = make_star_problem(g, v, uncovered, Variant::directed);
  if (p.slots.empty()) throw std::invalid_argument("vertex " + std::to_string(v) + " is isolated");
  SlotChoice c = densest_slots(p, {});
  return {to_star(p, c.slots), c.density, c.undirected_density};
}

}  // namespace spandist
