#include <benchmark/benchmark.h>

#include "quandle/census.hpp"
#include "quandle/congruence.hpp"
#include "quandle/morphism.hpp"
#include "quandle/presented.hpp"
#include "quandle/projective.hpp"

using namespace quandle;

namespace {

void BM_Census(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(census(n).count());
}
BENCHMARK(BM_Census)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_CanonicalFormTrivial(benchmark::State& state) {
  const auto t = trivial(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(t));
}
BENCHMARK(BM_CanonicalFormTrivial)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_CanonicalFormCensus5(benchmark::State& state) {
  const auto c = census(5);
  for (auto _ : state)
    for (const auto& t : c.tables) benchmark::DoNotOptimize(canonical_form(t));
}
BENCHMARK(BM_CanonicalFormCensus5)->Unit(benchmark::kMicrosecond);

void BM_EndMonoid(benchmark::State& state) {
  const auto t = trivial(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(end_monoid(t).size());
}
BENCHMARK(BM_EndMonoid)->DenseRange(3, 5)->Unit(benchmark::kMicrosecond);

void BM_HomsDihedral(benchmark::State& state) {
  const auto a = dihedral(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(homs(a, a).size());
}
BENCHMARK(BM_HomsDihedral)->Arg(9)->Arg(15)->Arg(27)->Unit(benchmark::kMicrosecond);

void BM_AllCongruences(benchmark::State& state) {
  const auto t = conj(GroupTable::symmetric(4), 1);
  for (auto _ : state) benchmark::DoNotOptimize(all_congruences(t).size());
}
BENCHMARK(BM_AllCongruences)->Unit(benchmark::kMicrosecond);

void BM_CoreTowerLimit(benchmark::State& state) {
  const auto s = group_tower_functor(cyclic_tower(3, static_cast<std::size_t>(state.range(0))),
                                     QuandleFunctor::core());
  for (auto _ : state) benchmark::DoNotOptimize(limit(s).threads.size());
}
BENCHMARK(BM_CoreTowerLimit)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_CompletionStage(benchmark::State& state) {
  CensusSource census;
  const auto p = Presentation::free({"a", "b"});
  const auto bound = static_cast<std::size_t>(state.range(0));
  census.get(bound);
  for (auto _ : state) benchmark::DoNotOptimize(completion_stage(p, bound, census).table.order());
}
BENCHMARK(BM_CompletionStage)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
