#include <benchmark/benchmark.h>

#include "widecount/codes.hpp"
#include "widecount/functors.hpp"
#include "widecount/gallery.hpp"
#include "widecount/lattice.hpp"

using namespace widecount;

static void BM_ElementaryCount(benchmark::State& state) {
  const ElementaryModelFunctor emf(4, PermGroup::symmetric(4), DownwardClosedSet(4, {{3, 3, 0, 0}}));
  for (auto _ : state) benchmark::DoNotOptimize(elementary_count(emf, state.range(0)));
}
BENCHMARK(BM_ElementaryCount)->Arg(10)->Arg(100)->Arg(1000);

static void BM_Denumerant(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(denumerant({1, 2, 3, 5, 7}, state.range(0)));
}
BENCHMARK(BM_Denumerant)->Arg(100)->Arg(10000);

static void BM_GroupoidRoots(benchmark::State& state) {
  const auto pres = roots_of_unity_presentation(3);
  for (auto _ : state) benchmark::DoNotOptimize(mf_count_via_groupoid(pres, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GroupoidRoots)->Arg(6)->Arg(12);

static void BM_DirectRoots(benchmark::State& state) {
  const auto pres = roots_of_unity_presentation(3);
  for (auto _ : state) benchmark::DoNotOptimize(mf_orbit_count_direct(pres, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DirectRoots)->Arg(4)->Arg(6);

static void BM_CodesBurnside(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_codes_burnside(3, 2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CodesBurnside)->Arg(6)->Arg(30);

static void BM_CodesDirect(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_codes_direct(2, 2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CodesDirect)->Arg(4)->Arg(6);

static void BM_SymmetricRanks(benchmark::State& state) {
  const std::vector<Rational> e{0, 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(fixed_rank_orbit_count(e, 2, static_cast<int>(state.range(0)), MatrixShape::Symmetric));
}
BENCHMARK(BM_SymmetricRanks)->Arg(4)->Arg(5);

static void BM_Trees(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tree_orbit_count(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Trees)->Arg(7)->Arg(8);
BENCHMARK_MAIN();
