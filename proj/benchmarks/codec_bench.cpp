#include "polytope/adversary.hpp"
#include "polytope/dss.hpp"
#include "polytope/genmatrix.hpp"
#include "polytope/polytope_codec.hpp"
#include "polytope/vpec.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace polytope;

void BM_Determinant(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> entry(-50, 50);
  IntMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (auto& v : m.row(r)) v = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(determinant(m));
}
BENCHMARK(BM_Determinant)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_BuildVMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_v_matrix(n, n / 3));
}
BENCHMARK(BM_BuildVMatrix)->Arg(6)->Arg(9)->Arg(12);

void BM_TrustedSet(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t t = n / 4;
  std::mt19937_64 rng(2);
  SyndromeGraph g(n);
  for (std::size_t a = 0; a < n; ++a) {
    g.set_loop(a);
    for (std::size_t b = a + 1; b < n; ++b)
      if (a + t >= n || b + t >= n ? std::bernoulli_distribution(0.5)(rng) : true) g.set_edge(a, b);
  }
  for (auto _ : state) benchmark::DoNotOptimize(trusted_set(g, t));
}
BENCHMARK(BM_TrustedSet)->Arg(8)->Arg(16)->Arg(24)->Arg(32);

void BM_VpecDecode(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t t = (n - 1) / 3;
  const auto p = make_vpec_params(n, t, 2, 4, 8);
  std::mt19937_64 rng(3);
  SymbolString x(p.source_length());
  for (auto& v : x) v = static_cast<Symbol>(rng() % 2);
  const auto sent = vpec_encode(x, p);
  const auto received = apply_attack(sent, random_attack(sent, t, AttackStrategy::mixed, rng), t);
  for (auto _ : state) benchmark::DoNotOptimize(vpec_decode(received, p));
}
BENCHMARK(BM_VpecDecode)->Arg(3)->Arg(5)->Arg(8);

void BM_MaxFlow(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto g = worst_case_flow_graph(k, k, static_cast<std::int64_t>(k), 1);
  for (auto _ : state) benchmark::DoNotOptimize(g.network.max_flow(g.source, g.sink));
}
BENCHMARK(BM_MaxFlow)->Arg(7)->Arg(16)->Arg(32);

void BM_DssRepair(benchmark::State& state) {
  DssParams p;
  p.n = 8;
  p.k = 7;
  p.d = 7;
  p.t = 1;
  p.rows = 5;
  p.lifetime = 9;
  p.group_len = 2;
  p.columns = 4;
  std::mt19937_64 rng(4);
  const auto f = random_file(p, rng);
  const std::vector<std::size_t> helpers{0, 1, 2, 3, 4, 5, 6};
  DssSystem base(f, p, 4);
  base.set_adversaries({2});
  base.fail(7);
  for (auto _ : state) {
    DssSystem s = base;
    benchmark::DoNotOptimize(s.repair(helpers));
  }
}
BENCHMARK(BM_DssRepair);

}  // namespace

BENCHMARK_MAIN();
