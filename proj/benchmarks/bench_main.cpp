#include "random_graphs.hpp"
#include "spandist/exact.hpp"
#include "spandist/gadget.hpp"
#include "spandist/mds.hpp"
#include "spandist/ptas.hpp"
#include "spandist/spanner.hpp"
#include "spandist/star.hpp"

#include <benchmark/benchmark.h>

using namespace spandist;

namespace {

Graph gnp(int n, double p, std::uint64_t seed, GraphKind kind = {}) {
  std::mt19937_64 rng(seed);
  return testing::random_graph(n, p, rng, true, kind);
}

void BM_TwoSpanner(benchmark::State& state) {
  Graph g = gnp(static_cast<int>(state.range(0)), 0.3, 1);
  std::uint64_t seed = 1;
  std::uint32_t iters = 0;
  for (auto _ : state) {
    SpannerOptions o;
    o.seed = seed++;
    auto r = two_spanner(g, o);
    iters = r.iterations;
    benchmark::DoNotOptimize(r.h);
  }
  state.counters["m"] = g.edge_count();
  state.counters["iterations"] = iters;
}
BENCHMARK(BM_TwoSpanner)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_CertificateCheck(benchmark::State& state) {
  Graph g = gnp(static_cast<int>(state.range(0)), 0.3, 2);
  auto r = two_spanner(g, {});
  for (auto _ : state) benchmark::DoNotOptimize(certificate_check(g, r).ok);
}
BENCHMARK(BM_CertificateCheck)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_DirectedSpanner(benchmark::State& state) {
  GraphKind k;
  k.directed = true;
  Graph g = gnp(static_cast<int>(state.range(0)), 0.2, 3, k);
  for (auto _ : state) {
    SpannerOptions o;
    o.variant = Variant::directed;
    benchmark::DoNotOptimize(two_spanner(g, o).h);
  }
}
BENCHMARK(BM_DirectedSpanner)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Mds(benchmark::State& state) {
  Graph g = gnp(static_cast<int>(state.range(0)), 0.1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(mds(g, {}).dominating);
}
BENCHMARK(BM_Mds)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_DensestStar(benchmark::State& state) {
  Graph g = gnp(static_cast<int>(state.range(0)), 0.5, 5);
  auto all = g.all_edges();
  for (auto _ : state)
    benchmark::DoNotOptimize(densest_star(g, 0, all, std::nullopt, Variant::undirected).density);
}
BENCHMARK(BM_DensestStar)->Arg(32)->Arg(128);

void BM_ExactSpanner(benchmark::State& state) {
  Graph g = gnp(static_cast<int>(state.range(0)), 0.4, 6);
  for (auto _ : state) benchmark::DoNotOptimize(min_spanner_exact(g, 2, Variant::undirected).cost);
}
BENCHMARK(BM_ExactSpanner)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_GadgetClaims(benchmark::State& state) {
  int l = static_cast<int>(state.range(0));
  auto gd = gen_disjointness_gadget(l, l, std::string(static_cast<std::size_t>(l * l), '1'),
                                    std::string(static_cast<std::size_t>(l * l), '1'));
  for (auto _ : state) benchmark::DoNotOptimize(verify_gadget_claims(gd, 5).ok);
}
BENCHMARK(BM_GadgetClaims)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PtasDistributed(benchmark::State& state) {
  Graph g = gnp(static_cast<int>(state.range(0)), 0.35, 7);
  for (auto _ : state) {
    PtasOptions o;
    benchmark::DoNotOptimize(ptas_distributed(g, o).run.h);
  }
}
BENCHMARK(BM_PtasDistributed)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
