#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace spandist {

// Dinic's algorithm on an integer-capacity network.
class MaxFlow {
 public:
  static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max() / 4;

  explicit MaxFlow(int nodes);
  // Adds u->v with capacity cap and the reverse residual arc with capacity rev_cap.
  void add_edge(int u, int v, std::int64_t cap, std::int64_t rev_cap = 0);
  std::int64_t run(int s, int t);

  // After run(): nodes reachable from s in the residual network.
  std::vector<char> source_side(int s) const;
  // After run(): nodes that can still reach t in the residual network.
  std::vector<char> sink_side(int t) const;

 private:
  struct Arc {
    int to;
    std::int64_t cap;
  };
  bool bfs(int s, int t);
  std::int64_t dfs(int u, int t, std::int64_t pushed);

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<int> level_, next_;
};

}  // namespace spandist
