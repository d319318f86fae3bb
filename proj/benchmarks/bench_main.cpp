#include <benchmark/benchmark.h>

#include <cstdint>

#include "hypermono/fourier.hpp"
#include "hypermono/func.hpp"
#include "hypermono/grid.hpp"
#include "hypermono/oracle.hpp"
#include "hypermono/rng.hpp"
#include "hypermono/tester.hpp"

using namespace hypermono;

namespace {

BoolFunc random_function(std::uint32_t n, std::uint32_t d) {
  return generate(Family::UniformRandom, GridShape(n, d), FamilyParams{}, 7);
}

void BM_SingleTest(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto d = static_cast<std::uint32_t>(state.range(1));
  const BoolFunc f = random_function(n, d);
  SplitMix64 rng(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(single_test(f, rng));
  }
}
BENCHMARK(BM_SingleTest)->Args({4, 4})->Args({16, 4})->Args({64, 3});

void BM_Distance(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto d = static_cast<std::uint32_t>(state.range(1));
  const BoolFunc f = random_function(n, d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance_to_monotonicity(f));
  }
}
BENCHMARK(BM_Distance)->Args({2, 6})->Args({4, 4})->Args({8, 3})->Unit(benchmark::kMillisecond);

void BM_Transform(benchmark::State& state) {
  const auto d = static_cast<std::uint32_t>(state.range(0));
  const GridShape shape(4, d);
  const BitTable table = materialize(random_function(4, d));
  const auto values = pm_table(table);
  for (auto _ : state) {
    benchmark::DoNotOptimize(transform(shape, values));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(shape.size()));
}
BENCHMARK(BM_Transform)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

}  // namespace
BENCHMARK_MAIN();
