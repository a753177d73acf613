#include <benchmark/benchmark.h>

#include "kswap/neighborhood.hpp"
#include "kswap/oracle.hpp"
#include "kswap/search.hpp"

using namespace kswap;

static void BM_DeltaMin(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto k = static_cast<int>(state.range(1));
  const Instance inst = generate_uniform(n, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(compute_delta_min(inst, k));
  state.counters["work"] = static_cast<double>(delta_min_work(n, k));
}
BENCHMARK(BM_DeltaMin)->Args({10, 2})->Args({10, 3})->Args({20, 3})->Args({30, 3});

static void BM_DeltaMinReference(benchmark::State& state) {
  const Instance inst = generate_uniform(static_cast<int>(state.range(0)), 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::delta_min_reference(inst, static_cast<int>(state.range(1))));
}
BENCHMARK(BM_DeltaMinReference)->Args({10, 2})->Args({10, 3});

static void BM_Run(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto k = static_cast<int>(state.range(1));
  const Instance inst = generate_uniform(n, 4, 3);
  std::uint64_t iterations = 0;
  for (auto _ : state) {
    const auto r = run(inst, k, {InitKind::all_on_one}, {PivotKind::first, 0});
    iterations = r.stats.iterations;
    benchmark::DoNotOptimize(r.stats.final_makespan);
  }
  state.counters["T"] = static_cast<double>(iterations);
}
BENCHMARK(BM_Run)->Args({12, 1})->Args({12, 2})->Args({24, 2})->Args({12, 3});

static void BM_VerifyLocalOpt(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const Instance inst = generate_uniform(n, 3, 5);
  const auto r = run(inst, 2, {InitKind::lpt}, {});
  const std::vector<MachineId> a(r.schedule.assignment().begin(), r.schedule.assignment().end());
  for (auto _ : state) benchmark::DoNotOptimize(oracle::verify_local_opt(inst, a, 2));
}
BENCHMARK(BM_VerifyLocalOpt)->Arg(12)->Arg(24);

static void BM_GlobalOpt(benchmark::State& state) {
  const Instance inst = generate_uniform(static_cast<int>(state.range(0)), 3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::global_opt(inst));
}
BENCHMARK(BM_GlobalOpt)->Arg(10)->Arg(14);
BENCHMARK_MAIN();
