#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace spandist {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using Weight = std::int64_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Weight weight = 1;
  bool client = false;
  bool server = false;
};

struct GraphKind {
  bool directed = false;
  bool weighted = false;
  bool client_server = false;
  bool operator==(const GraphKind&) const = default;
};

// Bitset over edge ids.
class EdgeSubset {
 public:
  EdgeSubset() = default;
  explicit EdgeSubset(std::size_t m, bool value = false) : bits_(m) {
    if (value) bits_.set();
  }

  std::size_t universe() const { return bits_.size(); }
  bool test(EdgeId e) const { return bits_.test(static_cast<std::size_t>(e)); }
  void set(EdgeId e, bool value = true) { bits_.set(static_cast<std::size_t>(e), value); }
  void reset(EdgeId e) { bits_.reset(static_cast<std::size_t>(e)); }
  std::size_t count() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  std::vector<EdgeId> ids() const;

  EdgeSubset& operator|=(const EdgeSubset& o) { bits_ |= o.bits_; return *this; }
  EdgeSubset& operator&=(const EdgeSubset& o) { bits_ &= o.bits_; return *this; }
  EdgeSubset& operator-=(const EdgeSubset& o) { bits_ -= o.bits_; return *this; }
  bool is_subset_of(const EdgeSubset& o) const { return bits_.is_subset_of(o.bits_); }
  bool operator==(const EdgeSubset& o) const { return bits_ == o.bits_; }

  static EdgeSubset from_ids(std::size_t m, std::span<const EdgeId> ids);

 private:
  boost::dynamic_bitset<> bits_;
};

class Graph {
 public:
  Graph() = default;
  // Throws std::invalid_argument on self loops, duplicates, bad endpoints,
  // negative weights, or flags that do not match the kind.
  Graph(VertexId n, std::vector<Edge> edges, GraphKind kind);

  VertexId vertex_count() const { return n_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  const GraphKind& kind() const { return kind_; }
  bool directed() const { return kind_.directed; }
  bool weighted() const { return kind_.weighted; }
  bool client_server() const { return kind_.client_server; }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<Edge>& edges() const { return edges_; }
  // Cost of an edge in the objective: its weight when weighted, else 1.
  Weight cost(EdgeId e) const { return kind_.weighted ? edge(e).weight : 1; }

  // Every edge touching v (both directions when directed), ascending id.
  std::span<const EdgeId> incident(VertexId v) const { return incident_[idx(v)]; }
  // Directed: arcs leaving / entering v. Undirected: same as incident.
  std::span<const EdgeId> out_edges(VertexId v) const;
  std::span<const EdgeId> in_edges(VertexId v) const;
  // Distinct neighbors in either direction, ascending.
  std::span<const VertexId> neighbors(VertexId v) const { return neighbors_[idx(v)]; }

  // Directed: the arc u->v. Undirected: the edge {u,v}.
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;
  VertexId other(EdgeId e, VertexId v) const {
    const Edge& x = edge(e);
    return x.u == v ? x.v : x.u;
  }

  std::size_t max_degree() const { return max_degree_; }
  Weight max_weight() const { return max_weight_; }
  EdgeSubset all_edges() const { return EdgeSubset(edges_.size(), true); }
  // Edges a spanner must cover: client edges in client-server mode, else all.
  EdgeSubset targets() const;
  // Edges a spanner may use: server edges in client-server mode, else all.
  EdgeSubset usable() const;

  std::size_t component_count() const;

 private:
  static std::size_t idx(VertexId v) { return static_cast<std::size_t>(v); }
  static std::uint64_t key(VertexId a, VertexId b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }

  VertexId n_ = 0;
  GraphKind kind_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_, out_, in_;
  std::vector<std::vector<VertexId>> neighbors_;
  std::unordered_map<std::uint64_t, EdgeId> lookup_;
  std::size_t max_degree_ = 0;
  Weight max_weight_ = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text format:
//   p spanner <n> <m> <directed 0|1> <weighted 0|1> [cs]
//   e <u> <v> [w] [c|s|cs]
// Lines starting with '#' and blank lines are ignored.
Graph parse_graph(std::istream& in);
Graph parse_graph_string(const std::string& text);
Graph load_graph(const std::string& path);
std::string format_graph(const Graph& g);

}  // namespace spandist
