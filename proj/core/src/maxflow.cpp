#include "spandist/maxflow.hpp"

#include <algorithm>
#include <deque>

namespace spandist {

MaxFlow::MaxFlow(int nodes) : out_(static_cast<std::size_t>(nodes)) {}

void MaxFlow::add_edge(int u, int v, std::int64_t cap, std::int64_t rev_cap) {
  out_[static_cast<std::size_t>(u)].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({v, cap});
  out_[static_cast<std::size_t>(v)].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({u, rev_cap});
}

bool MaxFlow::bfs(int s, int t) {
  level_.assign(out_.size(), -1);
  std::deque<int> q{s};
  level_[static_cast<std::size_t>(s)] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int a : out_[static_cast<std::size_t>(u)]) {
      const Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.cap > 0 && level_[static_cast<std::size_t>(arc.to)] < 0) {
        level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(u)] + 1;
        q.push_back(arc.to);
      }
    }
  }
  return level_[static_cast<std::size_t>(t)] >= 0;
}

std::int64_t MaxFlow::dfs(int u, int t, std::int64_t pushed) {
  if (u == t) return pushed;
  auto& it = next_[static_cast<std::size_t>(u)];
  const auto& outs = out_[static_cast<std::size_t>(u)];
  for (; it < static_cast<int>(outs.size()); ++it) {
    int a = outs[static_cast<std::size_t>(it)];
    Arc& arc = arcs_[static_cast<std::size_t>(a)];
    if (arc.cap <= 0 ||
        level_[static_cast<std::size_t>(arc.to)] != level_[static_cast<std::size_t>(u)] + 1)
      continue;
    std::int64_t got = dfs(arc.to, t, std::min(pushed, arc.cap));
    if (got > 0) {
      arc.cap -= got;
      arcs_[static_cast<std::size_t>(a ^ 1)].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int s, int t) {
  std::int64_t flow = 0;
  while (bfs(s, t)) {
    next_.assign(out_.size(), 0);
    while (std::int64_t f = dfs(s, t, kInfinity)) flow += f;
  }
  return flow;
}

std::vector<char> MaxFlow::source_side(int s) const {
  std::vector<char> seen(out_.size(), 0);
  std::vector<int> stack{s};
  seen[static_cast<std::size_t>(s)] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int a : out_[static_cast<std::size_t>(u)]) {
      const Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.cap > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
        seen[static_cast<std::size_t>(arc.to)] = 1;
        stack.push_back(arc.to);
      }
    }
  }
  return seen;
}

std::vector<char> MaxFlow::sink_side(int t) const {
  // Walk residual arcs backwards: x reaches t if some arc x->y has cap > 0 and y reaches t.
  std::vector<char> seen(out_.size(), 0);
  std::vector<int> stack{t};
  seen[static_cast<std::size_t>(t)] = 1;
  while (!stack.empty()) {
    int y = stack.back();
    stack.pop_back();
    for (int a : out_[static_cast<std::size_t>(y)]) {
      // a is y->x; its partner a^1 is x->y.
      const Arc& back = arcs_[static_cast<std::size_t>(a ^ 1)];
      int x = arcs_[static_cast<std::size_t>(a)].to;
      if (back.cap > 0 && !seen[static_cast<std::size_t>(x)]) {
        seen[static_cast<std::size_t>(x)] = 1;
        stack.push_back(x);
      }
    }
  }
  return seen;
}

}  // namespace spandist
