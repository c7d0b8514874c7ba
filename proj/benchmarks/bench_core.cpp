#include <benchmark/benchmark.h>

#include <random>

#include "natt/attraction.hpp"
#include "natt/nonattracting.hpp"

using namespace natt;

namespace {

// a -> a, b -> ba, c -> cbc on a rose
TopRep ex1() {
  MarkedGraph g;
  const auto v = g.add_vertex("v");
  for (const char* n : {"a", "b", "c"}) g.add_edge(n, v, v);
  g.add_stratum({{0}, StratumClass::NegFixed, std::nullopt});
  g.add_stratum({{1}, StratumClass::NegLinear, std::nullopt});
  g.add_stratum({{2}, StratumClass::EG, std::nullopt});
  const auto a = DirEdge::forward(0);
  const auto b = DirEdge::forward(1);
  const auto c = DirEdge::forward(2);
  return TopRep(g, {{a}, {b, a}, {c, b, c}}, 2);
}

void BM_Iterate(benchmark::State& state) {
  const auto t = ex1();
  const EdgePath c{VertexId{0}, {DirEdge::forward(2)}};
  for (auto _ : state) benchmark::DoNotOptimize(iterate(t, c, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Iterate)->DenseRange(8, 16, 4);

void BM_Tile(benchmark::State& state) {
  const auto t = ex1();
  for (auto _ : state) benchmark::DoNotOptimize(tile(t, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Tile)->DenseRange(3, 12, 3);

void BM_Occurrences(benchmark::State& state) {
  const auto t = ex1();
  const auto hay = f_sharp(t, cyclic_reduce(t.graph(), iterate(t, EdgePath{VertexId{0}, {DirEdge::forward(2)}},
                                                               static_cast<std::size_t>(state.range(0)))
                                                           .edges));
  const auto needle = tile(t, 3);
  for (auto _ : state) benchmark::DoNotOptimize(occurrences(hay, needle));
  state.SetComplexityN(static_cast<long>(hay.size()));
}
BENCHMARK(BM_Occurrences)->DenseRange(6, 14, 4)->Complexity();

void BM_Complementarity(benchmark::State& state) {
  const auto t = ex1();
  const auto nd = search_inp(t, 2);
  const auto ns = build_nonattracting(t, nd, default_k_max(t));
  const auto corpus = enumerate_circuits(t.graph(), static_cast<std::size_t>(state.range(0)));
  auto p = default_params(t);
  p.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(complementarity_audit(t, ns, corpus, p));
}
BENCHMARK(BM_Complementarity)->DenseRange(3, 5, 1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
