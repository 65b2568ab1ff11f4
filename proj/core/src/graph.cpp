#include "spandist/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace spandist {

std::vector<EdgeId> EdgeSubset::ids() const {
  std::vector<EdgeId> out;
  out.reserve(bits_.count());
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
    out.push_back(static_cast<EdgeId>(i));
  return out;
}

EdgeSubset EdgeSubset::from_ids(std::size_t m, std::span<const EdgeId> ids) {
  EdgeSubset s(m);
  for (EdgeId e : ids) {
    if (e < 0 || static_cast<std::size_t>(e) >= m)
      throw std::out_of_range("edge id " + std::to_string(e) + " outside host graph");
    s.set(e);
  }
  return s;
}

Graph::Graph(VertexId n, std::vector<Edge> edges, GraphKind kind)
    : n_(n), kind_(kind), edges_(std::move(edges)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  const auto nn = static_cast<std::size_t>(n);
  incident_.assign(nn, {});
  out_.assign(nn, {});
  in_.assign(nn, {});
  neighbors_.assign(nn, {});
  lookup_.reserve(edges_.size() * 2);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    const auto id = static_cast<EdgeId>(i);
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw std::invalid_argument("edge " + std::to_string(i) + ": vertex id out of range");
    if (e.u == e.v) throw std::invalid_argument("edge " + std::to_string(i) + ": self loop");
    if (e.weight < 0) throw std::invalid_argument("edge " + std::to_string(i) + ": negative weight");
    if (!kind.weighted && e.weight != 1)
      throw std::invalid_argument("edge " + std::to_string(i) + ": weight on unweighted graph");
    if (kind.client_server && !e.client && !e.server)
      throw std::invalid_argument("edge " + std::to_string(i) + ": client-server edge without flags");
    if (!kind.client_server && (e.client || e.server))
      throw std::invalid_argument("edge " + std::to_string(i) + ": flags on plain graph");
    if (!kind.directed && e.u > e.v) std::swap(e.u, e.v);
    if (!lookup_.emplace(key(e.u, e.v), id).second)
      throw std::invalid_argument("edge " + std::to_string(i) + ": duplicate edge");
    incident_[idx(e.u)].push_back(id);
    incident_[idx(e.v)].push_back(id);
    out_[idx(e.u)].push_back(id);
    in_[idx(e.v)].push_back(id);
    neighbors_[idx(e.u)].push_back(e.v);
    neighbors_[idx(e.v)].push_back(e.u);
    max_weight_ = std::max(max_weight_, e.weight);
  }
  for (std::size_t v = 0; v < nn; ++v) {
    auto& nb = neighbors_[v];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    max_degree_ = std::max(max_degree_, incident_[v].size());
  }
}

std::span<const EdgeId> Graph::out_edges(VertexId v) const {
  return kind_.directed ? std::span<const EdgeId>(out_[idx(v)]) : incident(v);
}

std::span<const EdgeId> Graph::in_edges(VertexId v) const {
  return kind_.directed ? std::span<const EdgeId>(in_[idx(v)]) : incident(v);
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
  if (!kind_.directed && u > v) std::swap(u, v);
  auto it = lookup_.find(key(u, v));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

EdgeSubset Graph::targets() const {
  EdgeSubset s(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (!kind_.client_server || edges_[i].client) s.set(static_cast<EdgeId>(i));
  return s;
}

EdgeSubset Graph::usable() const {
  EdgeSubset s(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (!kind_.client_server || edges_[i].server) s.set(static_cast<EdgeId>(i));
  return s;
}

std::size_t Graph::component_count() const {
  std::vector<VertexId> parent(static_cast<std::size_t>(n_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](VertexId x) {
    while (parent[idx(x)] != x) {
      parent[idx(x)] = parent[idx(parent[idx(x)])];
      x = parent[idx(x)];
    }
    return x;
  };
  std::size_t comps = static_cast<std::size_t>(n_);
  for (const Edge& e : edges_) {
    VertexId a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[idx(a)] = b;
      --comps;
    }
  }
  return comps;
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

long long to_int(const std::string& s, std::size_t line, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + s + "'");
  }
  if (pos != s.size())
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + s + "'");
  return v;
}

bool to_flag(const std::string& s, std::size_t line, const char* what) {
  if (s == "0") return false;
  if (s == "1") return true;
  throw ParseError(line, std::string(what) + " flag must be 0 or 1");
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  long long n = 0, m = 0;
  GraphKind kind;
  std::vector<Edge> edges;
  std::unordered_map<std::uint64_t, std::size_t> seen;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokens(line);
    if (t.empty() || t[0][0] == '#') continue;
    if (t[0] == "p") {
      if (have_header) throw ParseError(lineno, "second header line");
      if (t.size() < 6 || t.size() > 7 || t[1] != "spanner")
        throw ParseError(lineno, "malformed header, expected 'p spanner n m directed weighted [cs]'");
      n = to_int(t[2], lineno, "vertex count");
      m = to_int(t[3], lineno, "edge count");
      if (n < 0 || m < 0) throw ParseError(lineno, "negative count in header");
      kind.directed = to_flag(t[4], lineno, "directed");
      kind.weighted = to_flag(t[5], lineno, "weighted");
      if (t.size() == 7) {
        if (t[6] != "cs") throw ParseError(lineno, "unknown header token '" + t[6] + "'");
        kind.client_server = true;
      }
      have_header = true;
      continue;
    }
    if (t[0] != "e") throw ParseError(lineno, "unknown line type '" + t[0] + "'");
    if (!have_header) throw ParseError(lineno, "edge before header");
    std::size_t want = 3 + (kind.weighted ? 1 : 0) + (kind.client_server ? 1 : 0);
    if (t.size() != want)
      throw ParseError(lineno, "edge line needs " + std::to_string(want) + " tokens");
    Edge e;
    long long u = to_int(t[1], lineno, "endpoint");
    long long v = to_int(t[2], lineno, "endpoint");
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(lineno, "vertex id out of range");
    if (u == v) throw ParseError(lineno, "self loop");
    e.u = static_cast<VertexId>(u);
    e.v = static_cast<VertexId>(v);
    std::size_t pos = 3;
    if (kind.weighted) {
      long long w = to_int(t[pos++], lineno, "weight");
      if (w < 0) throw ParseError(lineno, "negative weight");
      e.weight = w;
    }
    if (kind.client_server) {
      const std::string& f = t[pos];
      if (f == "c") e.client = true;
      else if (f == "s") e.server = true;
      else if (f == "cs" || f == "sc") e.client = e.server = true;
      else throw ParseError(lineno, "edge flags must be c, s or cs");
    }
    VertexId a = e.u, b = e.v;
    if (!kind.directed && a > b) std::swap(a, b);
    std::uint64_t k = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
                      static_cast<std::uint32_t>(b);
    if (!seen.emplace(k, lineno).second) throw ParseError(lineno, "duplicate edge");
    edges.push_back(e);
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(lineno, "header declares " + std::to_string(m) + " edges, found " +
                                 std::to_string(edges.size()));
  return Graph(static_cast<VertexId>(n), std::move(edges), kind);
}

Graph parse_graph_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_graph(in);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "p spanner " << g.vertex_count() << ' ' << g.edge_count() << ' ' << (g.directed() ? 1 : 0)
      << ' ' << (g.weighted() ? 1 : 0);
  if (g.client_server()) out << " cs";
  out << '\n';
  for (const Edge& e : g.edges()) {
    out << "e " << e.u << ' ' << e.v;
    if (g.weighted()) out << ' ' << e.weight;
    if (g.client_server()) out << ' ' << (e.client && e.server ? "cs" : e.client ? "c" : "s");
    out << '\n';
  }
  return out.str();
}

}  // namespace spandist
