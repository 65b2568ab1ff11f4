#include "spandist/gadget.hpp"

#include "spandist/verify.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace spandist {

namespace {

void check_strings(int l, const std::string& a, const std::string& b) {
  const auto want = static_cast<std::size_t>(l) * static_cast<std::size_t>(l);
  for (const std::string* s : {&a, &b}) {
    if (s->size() != want)
      throw std::invalid_argument("input string must have " + std::to_string(want) + " bits, got " +
                                  std::to_string(s->size()));
    if (s->find_first_not_of("01") != std::string::npos) throw std::invalid_argument("input string must be binary");
  }
}

bool bit(const std::string& s, int l, int i, int j) {
  return s[static_cast<std::size_t>((i - 1) * l + (j - 1))] == '1';
}

// Hop distances from s along edges accepted by `use`, following arc direction
// on directed graphs. -1 when unreached within `limit` (limit < 0: no limit).
std::vector<int> reach(const Graph& g, VertexId s, const std::function<bool(EdgeId)>& use, int limit) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  std::deque<VertexId> q{s};
  dist[static_cast<std::size_t>(s)] = 0;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    int dv = dist[static_cast<std::size_t>(v)];
    if (limit >= 0 && dv >= limit) continue;
    for (EdgeId e : g.out_edges(v)) {
      if (!use(e)) continue;
      VertexId w = g.other(e, v);
      if (dist[static_cast<std::size_t>(w)] != -1) continue;
      dist[static_cast<std::size_t>(w)] = dv + 1;
      q.push_back(w);
    }
  }
  return dist;
}

std::string idx(int i) { return std::to_string(i); }
std::string idx(int i, int j) { return std::to_string(i) + "_" + std::to_string(j); }

struct Builder {
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  std::map<std::string, std::vector<VertexId>> groups;

  VertexId add(const std::string& group, const std::string& label) {
    auto v = static_cast<VertexId>(labels.size());
    labels.push_back(label);
    groups[group].push_back(v);
    return v;
  }
  EdgeId edge(VertexId u, VertexId v, Weight w = 1) {
    edges.push_back({u, v, w, false, false});
    return static_cast<EdgeId>(edges.size() - 1);
  }
};

void fail(std::vector<std::string>& out, bool& ok, std::string msg) {
  ok = false;
  if (out.size() < 50) out.push_back(std::move(msg));
}

}  // namespace

bool strings_disjoint(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) throw std::invalid_argument("input strings differ in length");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] == '1' && b[i] == '1') return false;
  return true;
}

DisjointnessGadget gen_disjointness_gadget(int l, int beta, const std::string& a, const std::string& b) {
  if (l < 1 || beta < 1) throw std::invalid_argument("l and beta must be at least 1");
  check_strings(l, a, b);
  DisjointnessGadget gd;
  gd.l = l;
  gd.beta = beta;
  gd.a = a;
  gd.b = b;
  gd.t = gd.c * l * beta;
  Builder bd;
  for (int s : {1, 2})
    for (int i = 1; i <= l; ++i) bd.add("X1", "x" + idx(s) + "^" + idx(i));
  for (int s : {1, 2})
    for (int i = 1; i <= l; ++i) bd.add("Y1", "y" + idx(s) + "^" + idx(i));
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= beta; ++j) bd.add("X2", "x_" + idx(i, j));
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= beta; ++j) bd.add("Y2", "y_" + idx(i, j));
  for (int i = 1; i <= l; ++i) bd.add("Y3", "y3^" + idx(i));

  std::vector<EdgeId> d;
  for (int i = 1; i <= l; ++i) {
    bd.edge(gd.x1(i), gd.y1(i));
    bd.edge(gd.x2(i), gd.y2(i));
  }
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= beta; ++j)
      for (int r = 1; r <= l; ++r)
        for (int s = 1; s <= beta; ++s) d.push_back(bd.edge(gd.x(i, j), gd.y(r, s)));
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= beta; ++j) {
      bd.edge(gd.x(i, j), gd.x1(i));
      bd.edge(gd.y3(i), gd.y(i, j));
    }
  for (int i = 1; i <= l; ++i) bd.edge(gd.y2(i), gd.y3(i));
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j) {
      if (!bit(a, l, i, j)) bd.edge(gd.x1(i), gd.x2(j));
      if (!bit(b, l, i, j)) bd.edge(gd.y1(i), gd.y2(j));
    }

  GraphKind kind;
  kind.directed = true;
  const auto n = static_cast<VertexId>(bd.labels.size());
  gd.graph = Graph(n, std::move(bd.edges), kind);
  gd.d = EdgeSubset::from_ids(static_cast<std::size_t>(gd.graph.edge_count()), d);
  gd.labels = std::move(bd.labels);
  gd.groups = std::move(bd.groups);
  gd.partition.side_b = gd.groups.at("Y1");
  for (VertexId v = 0; v < n; ++v)
    if (!std::binary_search(gd.partition.side_b.begin(), gd.partition.side_b.end(), v))
      gd.partition.side_a.push_back(v);
  return gd;
}

GadgetReport verify_gadget_claims(const DisjointnessGadget& gd, int k) {
  if (k < 5) throw std::invalid_argument("gadget claims need k >= 5");
  const Graph& g = gd.graph;
  const int l = gd.l, beta = gd.beta;
  GadgetReport rep;
  auto& bad = rep.violations;
  rep.disjoint = strings_disjoint(gd.a, gd.b);
  rep.size_bound = 7 * static_cast<std::int64_t>(l) * std::max(l, beta);

  // Structure.
  if (g.vertex_count() != 2 * l * beta + 5 * l) fail(bad, rep.ok, "vertex count differs from 2*l*beta + 5*l");
  if (gd.d.count() != static_cast<std::size_t>(l * beta) * static_cast<std::size_t>(l * beta))
    fail(bad, rep.ok, "|D| differs from (l*beta)^2");
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j) {
      if (g.find_edge(gd.x1(i), gd.x2(j)).has_value() == bit(gd.a, l, i, j))
        fail(bad, rep.ok, "edge x1_" + idx(i) + " -> x2_" + idx(j) + " does not match a");
      if (g.find_edge(gd.y1(i), gd.y2(j)).has_value() == bit(gd.b, l, i, j))
        fail(bad, rep.ok, "edge y1_" + idx(i) + " -> y2_" + idx(j) + " does not match b");
    }
  rep.cut_edges = *audit(Trace{}, g, gd.partition).cut_edges;
  if (rep.cut_edges != static_cast<std::size_t>(3 * l)) fail(bad, rep.ok, "cut has " + std::to_string(rep.cut_edges) + " edges, expected 3l");

  // Non-D paths: length <= 5 exists iff a_ir * b_ir = 0, and none of any
  // length otherwise.
  auto not_d = [&](EdgeId e) { return !gd.d.test(e); };
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= beta; ++j) {
      auto short_dist = reach(g, gd.x(i, j), not_d, 5);
      auto any_dist = reach(g, gd.x(i, j), not_d, -1);
      for (int r = 1; r <= l; ++r) {
        bool blocked = bit(gd.a, l, i, r) && bit(gd.b, l, i, r);
        for (int s = 1; s <= beta; ++s) {
          ++rep.pairs_checked;
          auto t = static_cast<std::size_t>(gd.y(r, s));
          bool has_short = short_dist[t] != -1;
          bool has_any = any_dist[t] != -1;
          if (has_short == blocked || (blocked && has_any))
            fail(bad, rep.ok, "non-D path law fails for x_" + idx(i, j) + " -> y_" + idx(r, s));
        }
      }
    }

  if (rep.disjoint) {
    EdgeSubset h = g.all_edges();
    h -= gd.d;
    rep.sparse_spanner_size = h.count();
    if (!verify_spanner(g, h, k).valid) fail(bad, rep.ok, "E \\ D is not a k-spanner on disjoint inputs");
    if (static_cast<std::int64_t>(h.count()) > rep.size_bound)
      fail(bad, rep.ok, "|E \\ D| = " + std::to_string(h.count()) + " exceeds 7*l*max(l,beta)");
  }

  // Forced D edges: no replacement path of length <= k once removed.
  std::vector<std::size_t> forced(static_cast<std::size_t>(l * l), 0);
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= beta; ++j) {
      for (int r = 1; r <= l; ++r)
        for (int s = 1; s <= beta; ++s) {
          EdgeId e = *g.find_edge(gd.x(i, j), gd.y(r, s));
          auto dist = reach(g, gd.x(i, j), [&](EdgeId f) { return f != e; }, k);
          if (dist[static_cast<std::size_t>(gd.y(r, s))] == -1) {
            ++forced[static_cast<std::size_t>((i - 1) * l + r - 1)];
            ++rep.forced_d_edges;
          }
        }
    }
  const auto b2 = static_cast<std::size_t>(beta) * static_cast<std::size_t>(beta);
  for (int i = 1; i <= l; ++i)
    for (int r = 1; r <= l; ++r) {
      bool both = bit(gd.a, l, i, r) && bit(gd.b, l, i, r);
      rep.intersecting += both;
      std::size_t f = forced[static_cast<std::size_t>((i - 1) * l + r - 1)];
      if (both ? f < b2 : f != 0)
        fail(bad, rep.ok, "index pair (" + idx(i) + "," + idx(r) + ") has " + std::to_string(f) + " forced D edges");
    }
  if (rep.disjoint != (rep.intersecting == 0)) fail(bad, rep.ok, "disjointness disagrees with the bit count");
  const auto l2 = static_cast<std::size_t>(l) * static_cast<std::size_t>(l);
  if (12 * rep.intersecting >= l2 && 12 * rep.forced_d_edges < b2 * l2)
    fail(bad, rep.ok, "fewer than beta^2 l^2 / 12 forced D edges with at least l^2/12 intersecting indices");
  return rep;
}

WeightedGadget gen_weighted_gadget(int l, int k, bool directed, const std::string& a, const std::string& b) {
  if (k < 4) throw std::invalid_argument("weighted gadget needs k >= 4");
  if (l < 1) throw std::invalid_argument("l must be at least 1");
  check_strings(l, a, b);
  WeightedGadget gw;
  gw.l = l;
  gw.k = k;
  gw.directed = directed;
  gw.a = a;
  gw.b = b;
  Builder bd;
  for (int s : {1, 2})
    for (int i = 1; i <= l; ++i) bd.add("X1", "x" + idx(s) + "^" + idx(i));
  for (int s : {1, 2})
    for (int i = 1; i <= l; ++i) bd.add("Y1", "y" + idx(s) + "^" + idx(i));
  for (int i = 1; i <= l; ++i) bd.add("X2", "x_" + idx(i));
  for (int i = 1; i <= l; ++i) bd.add("Y2", "y_" + idx(i));

  std::vector<EdgeId> d;
  for (int i = 1; i <= l; ++i) {
    bd.edge(gw.x1(i), gw.y1(i), 0);
    bd.edge(gw.x2(i), gw.y2(i), 0);
  }
  for (int i = 1; i <= l; ++i)
    for (int r = 1; r <= l; ++r) d.push_back(bd.edge(gw.x(i), gw.y(r), 1));
  for (int i = 1; i <= l; ++i) bd.edge(gw.x(i), gw.x1(i), 0);
  for (int i = 1; i <= l; ++i) {
    if (directed || k == 4) {
      bd.edge(gw.y2(i), gw.y(i), 0);
      continue;
    }
    // Path y2_i, y3_i, ..., y{k-2}_i, y_i of length k - 3.
    VertexId prev = gw.y2(i);
    for (int s = 3; s <= k - 2; ++s) {
      VertexId p = bd.add("P", "y" + idx(s) + "^" + idx(i));
      bd.edge(prev, p, 0);
      prev = p;
    }
    bd.edge(prev, gw.y(i), 0);
  }
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j) {
      if (!bit(a, l, i, j)) bd.edge(gw.x1(i), gw.x2(j), 0);
      if (!bit(b, l, i, j)) bd.edge(gw.y1(i), gw.y2(j), 0);
    }

  GraphKind kind;
  kind.directed = directed;
  kind.weighted = true;
  const auto n = static_cast<VertexId>(bd.labels.size());
  gw.graph = Graph(n, std::move(bd.edges), kind);
  gw.d = EdgeSubset::from_ids(static_cast<std::size_t>(gw.graph.edge_count()), d);
  gw.labels = std::move(bd.labels);
  gw.groups = std::move(bd.groups);
  gw.partition.side_b = gw.groups.at("Y1");
  for (VertexId v = 0; v < n; ++v)
    if (!std::binary_search(gw.partition.side_b.begin(), gw.partition.side_b.end(), v))
      gw.partition.side_a.push_back(v);
  return gw;
}

WeightedGadgetReport verify_weighted_gadget(const WeightedGadget& gw) {
  const Graph& g = gw.graph;
  const int l = gw.l;
  WeightedGadgetReport rep;
  auto& bad = rep.violations;
  rep.disjoint = strings_disjoint(gw.a, gw.b);
  if (gw.directed && g.vertex_count() != 6 * l) fail(bad, rep.ok, "directed weighted gadget must have 6l vertices");
  if (!gw.directed && g.vertex_count() != 6 * l + std::max(0, gw.k - 4) * l)
    fail(bad, rep.ok, "undirected weighted gadget has the wrong vertex count");
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).weight != (gw.d.test(e) ? 1 : 0)) fail(bad, rep.ok, "edge " + std::to_string(e) + " has the wrong weight");

  auto zero = [&](EdgeId e) { return g.edge(e).weight == 0; };
  for (int i = 1; i <= l; ++i) {
    auto dist = reach(g, gw.x(i), zero, gw.k);
    for (int j = 1; j <= l; ++j)
      if (dist[static_cast<std::size_t>(gw.y(j))] == -1) rep.blocked.emplace_back(i, j);
  }
  rep.zero_cost_spanner = rep.blocked.empty();
  // The 0-weight edges form a k-spanner exactly when every D edge is bridged.
  EdgeSubset h = g.all_edges();
  h -= gw.d;
  if (verify_spanner(g, h, gw.k).valid != rep.zero_cost_spanner)
    fail(bad, rep.ok, "0-weight BFS disagrees with verify_spanner");
  if (rep.zero_cost_spanner != rep.disjoint) fail(bad, rep.ok, "0-cost spanner exists iff inputs disjoint fails");
  for (auto [i, j] : rep.blocked)
    if (!(bit(gw.a, l, i, j) && bit(gw.b, l, i, j)))
      fail(bad, rep.ok, "pair (x_" + idx(i) + ", y_" + idx(j) + ") blocked with a_ij * b_ij = 0");
  return rep;
}

ReductionGadget gen_mvc_reduction(const Graph& g, bool directed) {
  if (g.directed() || g.weighted() || g.client_server())
    throw std::invalid_argument("reduction source must be a plain undirected graph");
  ReductionGadget r;
  r.source = g;
  r.directed = directed;
  std::vector<Edge> es;
  auto add = [&](VertexId u, VertexId v, Weight w) { es.push_back({u, v, w, false, false}); };
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    add(3 * v, 3 * v + 1, 1);
    add(3 * v, 3 * v + 2, 0);
    if (directed)
      add(3 * v + 2, 3 * v + 1, 0);
    else
      add(3 * v + 1, 3 * v + 2, 0);
  }
  for (const Edge& e : g.edges()) {
    VertexId v = std::min(e.u, e.v), u = std::max(e.u, e.v);
    add(3 * v, 3 * u, 0);
    if (directed) add(3 * u, 3 * v, 0);
    add(3 * v + 1, 3 * u + 1, 0);
    if (directed) add(3 * u + 1, 3 * v + 1, 0);
    add(3 * v, 3 * u + 1, 2);
  }
  GraphKind kind;
  kind.directed = directed;
  kind.weighted = true;
  r.gs = Graph(3 * g.vertex_count(), std::move(es), kind);
  return r;
}

EdgeSubset cover_to_spanner(const ReductionGadget& r, const std::vector<VertexId>& cover) {
  const Graph& g = r.source;
  std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
  for (VertexId v : cover) {
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("cover vertex out of range");
    in[static_cast<std::size_t>(v)] = 1;
  }
  for (const Edge& e : g.edges())
    if (!in[static_cast<std::size_t>(e.u)] && !in[static_cast<std::size_t>(e.v)])
      throw std::invalid_argument("not a vertex cover: edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} uncovered");
  EdgeSubset h(static_cast<std::size_t>(r.gs.edge_count()));
  for (EdgeId e = 0; e < r.gs.edge_count(); ++e)
    if (r.gs.edge(e).weight == 0) h.set(e);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (in[static_cast<std::size_t>(v)]) h.set(*r.gs.find_edge(3 * v, 3 * v + 1));
  return h;
}

EdgeSubset canonicalize_spanner(const ReductionGadget& r, const EdgeSubset& h) {
  if (h.universe() != static_cast<std::size_t>(r.gs.edge_count())) throw std::invalid_argument("edge set of another graph");
  EdgeSubset out = h;
  for (EdgeId e : h.ids()) {
    const Edge& x = r.gs.edge(e);
    if (x.weight != 2) continue;
    out.reset(e);
    for (VertexId end : {x.u, x.v}) {
      VertexId v = end / 3;
      out.set(*r.gs.find_edge(3 * v, 3 * v + 1));
    }
  }
  return out;
}

std::vector<VertexId> spanner_to_cover(const ReductionGadget& r, const EdgeSubset& h) {
  if (h.universe() != static_cast<std::size_t>(r.gs.edge_count())) throw std::invalid_argument("edge set of another graph");
  if (!verify_spanner(r.gs, h, 2).valid) throw std::invalid_argument("not a 2-spanner of the reduction graph");
  EdgeSubset hp = canonicalize_spanner(r, h);
  std::vector<VertexId> c;
  for (VertexId v = 0; v < r.source.vertex_count(); ++v)
    if (hp.test(*r.gs.find_edge(3 * v, 3 * v + 1))) c.push_back(v);
  return c;
}

namespace {

nlohmann::json partition_json(const Cut& c) { return {{"V_A", c.side_a}, {"V_B", c.side_b}}; }

}  // namespace

nlohmann::json describe(const DisjointnessGadget& g) {
  return {{"kind", "disjointness"}, {"l", g.l}, {"beta", g.beta}, {"a", g.a}, {"b", g.b},
          {"n", g.graph.vertex_count()}, {"m", g.graph.edge_count()}, {"c", g.c}, {"t", g.t},
          {"groups", g.groups}, {"labels", g.labels}, {"D", g.d.ids()}, {"partition", partition_json(g.partition)}};
}

nlohmann::json describe(const WeightedGadget& g) {
  return {{"kind", "weighted"}, {"l", g.l}, {"k", g.k}, {"directed", g.directed}, {"a", g.a}, {"b", g.b},
          {"n", g.graph.vertex_count()}, {"m", g.graph.edge_count()}, {"groups", g.groups}, {"labels", g.labels},
          {"D", g.d.ids()}, {"partition", partition_json(g.partition)}};
}

nlohmann::json describe(const ReductionGadget& r) {
  nlohmann::json tri = nlohmann::json::array();
  for (VertexId v = 0; v < r.source.vertex_count(); ++v) tri.push_back({3 * v, 3 * v + 1, 3 * v + 2});
  return {{"kind", "mvc"}, {"directed", r.directed}, {"source_n", r.source.vertex_count()},
          {"source_m", r.source.edge_count()}, {"n", r.gs.vertex_count()}, {"m", r.gs.edge_count()},
          {"triangles", tri}};
}

nlohmann::json to_json(const GadgetReport& r) {
  return {{"ok", r.ok}, {"violations", r.violations}, {"disjoint", r.disjoint}, {"pairs_checked", r.pairs_checked},
          {"intersecting", r.intersecting}, {"forced_d_edges", r.forced_d_edges}, {"cut_edges", r.cut_edges},
          {"sparse_spanner_size", r.sparse_spanner_size}, {"size_bound", r.size_bound}};
}

nlohmann::json to_json(const WeightedGadgetReport& r) {
  nlohmann::json blocked = nlohmann::json::array();
  for (auto [i, j] : r.blocked) blocked.push_back({i, j});
  return {{"ok", r.ok}, {"violations", r.violations}, {"disjoint", r.disjoint},
          {"zero_cost_spanner", r.zero_cost_spanner}, {"blocked", blocked}};
}

}  // namespace spandist
