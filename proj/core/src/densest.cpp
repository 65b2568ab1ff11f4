#include "spandist/densest.hpp"

#include "spandist/maxflow.hpp"

#include <algorithm>
#include <stdexcept>

namespace spandist {

namespace {

// Goldberg's network for max_U q|E(U)| - p c(U), with forced members.
class Parametric {
 public:
  explicit Parametric(const DensestInput& in)
      : in_(in), n_(static_cast<int>(in.cost.size())), deg_(in.cost.size(), 0) {
    for (auto [a, b] : in.edges) {
      ++deg_[static_cast<std::size_t>(a)];
      ++deg_[static_cast<std::size_t>(b)];
    }
    m_ = static_cast<std::int64_t>(in.edges.size());
  }

  struct Sides {
    std::vector<char> min_side, max_side;
  };

  Sides solve(const Ratio& lambda, const std::vector<char>& forced, bool want_max) const {
    const std::int64_t p = lambda.num(), q = lambda.den();
    const int s = n_, t = n_ + 1;
    MaxFlow flow(n_ + 2);
    for (int u = 0; u < n_; ++u) {
      auto uu = static_cast<std::size_t>(u);
      __int128 sink = static_cast<__int128>(q) * m_ + static_cast<__int128>(2) * p * in_.cost[uu] -
                      static_cast<__int128>(q) * deg_[uu];
      if (sink > MaxFlow::kInfinity / 4) throw std::overflow_error("densest-subset capacities");
      flow.add_edge(s, u, forced[uu] ? MaxFlow::kInfinity : q * m_);
      flow.add_edge(u, t, static_cast<std::int64_t>(sink));
    }
    for (auto [a, b] : in_.edges) flow.add_edge(a, b, q, q);
    flow.run(s, t);
    Sides out;
    auto src = flow.source_side(s);
    out.min_side.assign(src.begin(), src.begin() + n_);
    if (want_max) {
      auto snk = flow.sink_side(t);
      out.max_side.resize(static_cast<std::size_t>(n_));
      for (int u = 0; u < n_; ++u) out.max_side[static_cast<std::size_t>(u)] = !snk[static_cast<std::size_t>(u)];
    }
    return out;
  }

  std::int64_t inside(const std::vector<char>& set) const {
    std::int64_t c = 0;
    for (auto [a, b] : in_.edges)
      if (set[static_cast<std::size_t>(a)] && set[static_cast<std::size_t>(b)]) ++c;
    return c;
  }
  Weight cost(const std::vector<char>& set) const {
    Weight c = 0;
    for (int u = 0; u < n_; ++u)
      if (set[static_cast<std::size_t>(u)]) c += in_.cost[static_cast<std::size_t>(u)];
    return c;
  }
  __int128 objective(const std::vector<char>& set, const Ratio& lambda) const {
    return static_cast<__int128>(lambda.den()) * inside(set) -
           static_cast<__int128>(lambda.num()) * cost(set);
  }

  // Dinkelbach iteration from a feasible start.
  std::pair<Ratio, std::vector<char>> climb(const std::vector<char>& forced, Ratio lambda,
                                            std::vector<char> best) const {
    for (;;) {
      auto sides = solve(lambda, forced, false);
      if (objective(sides.min_side, lambda) <= 0) return {lambda, best};
      Weight c = cost(sides.min_side);
      if (c <= 0) throw std::logic_error("densest-subset: improving set without cost");
      lambda = Ratio(inside(sides.min_side), c);
      best = std::move(sides.min_side);
    }
  }

 private:
  const DensestInput& in_;
  int n_;
  std::vector<std::int64_t> deg_;
  std::int64_t m_ = 0;
};

DensestOutput finish(const DensestInput& in, const std::vector<char>& set) {
  DensestOutput out;
  for (std::size_t u = 0; u < set.size(); ++u)
    if (set[u]) {
      out.members.push_back(static_cast<int>(u));
      out.cost += in.cost[u];
    }
  for (auto [a, b] : in.edges)
    if (set[static_cast<std::size_t>(a)] && set[static_cast<std::size_t>(b)]) ++out.inside;
  std::sort(out.members.begin(), out.members.end(), [&](int a, int b) {
    return in.label[static_cast<std::size_t>(a)] < in.label[static_cast<std::size_t>(b)];
  });
  out.density = out.cost > 0 ? Ratio(out.inside, out.cost) : Ratio(0);
  return out;
}

bool better_tie(const DensestInput& in, const std::vector<char>& a, const std::vector<char>& b) {
  auto labels = [&](const std::vector<char>& s) {
    std::vector<VertexId> l;
    for (std::size_t u = 0; u < s.size(); ++u)
      if (s[u]) l.push_back(in.label[u]);
    std::sort(l.begin(), l.end());
    return l;
  };
  auto la = labels(a), lb = labels(b);
  if (la.size() != lb.size()) return la.size() < lb.size();
  return la < lb;
}

struct Search {
  Ratio best;
  std::vector<char> set;
};

Search optimum(const DensestInput& in, const Parametric& par, const std::vector<char>& zero,
               std::int64_t zero_inside) {
  const std::size_t n = in.cost.size();
  if (zero_inside == 0) {
    auto [lam, set] = par.climb(zero, Ratio(0), {});
    return {lam, set};
  }
  Search best{Ratio(-1), {}};
  for (std::size_t x = 0; x < n; ++x) {
    if (zero[x]) continue;
    auto forced = zero;
    forced[x] = 1;
    Ratio start(par.inside(forced), par.cost(forced));
    auto [lam, set] = par.climb(forced, start, forced);
    if (lam > best.best) best = {lam, set};
  }
  return best;
}

}  // namespace

DensestOutput densest_subset(const DensestInput& in, bool tie_break) {
  const std::size_t n = in.cost.size();
  if (n == 0) throw std::invalid_argument("densest subset of an empty vertex set");
  if (in.label.size() != n) throw std::invalid_argument("label count mismatch");
  std::vector<char> zero(n, 0);
  bool any_positive = false;
  for (std::size_t u = 0; u < n; ++u) {
    if (in.cost[u] < 0) throw std::invalid_argument("negative cost");
    zero[u] = in.cost[u] == 0;
    any_positive |= !zero[u];
  }
  bool any_zero = std::find(zero.begin(), zero.end(), 1) != zero.end();
  if (!any_positive) return finish(in, zero);
  if (in.edges.empty()) {
    if (any_zero) return finish(in, zero);
    std::vector<char> one(n, 0);
    std::size_t low = 0;
    for (std::size_t u = 1; u < n; ++u)
      if (in.label[u] < in.label[low]) low = u;
    one[low] = 1;
    return finish(in, one);
  }

  Parametric par(in);
  std::int64_t zero_inside = par.inside(zero);
  Search opt = optimum(in, par, zero, zero_inside);
  if (!tie_break) return finish(in, opt.set);

  std::vector<char> reach(n, 1);
  if (zero_inside == 0) reach = par.solve(opt.best, zero, true).max_side;
  std::vector<char> chosen;
  for (std::size_t x = 0; x < n; ++x) {
    if (zero[x] || !reach[x]) continue;
    auto forced = zero;
    forced[x] = 1;
    auto t = par.solve(opt.best, forced, false).min_side;
    if (par.objective(t, opt.best) != 0) continue;
    if (chosen.empty() || better_tie(in, t, chosen)) chosen = std::move(t);
  }
  if (chosen.empty()) throw std::logic_error("densest-subset: tie-break lost the optimum");
  return finish(in, chosen);
}

Ratio densest_value(const DensestInput& in) { return densest_subset(in, false).density; }

}  // namespace spandist
