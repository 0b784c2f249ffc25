#include <benchmark/benchmark.h>

#include "wsat/oracle.hpp"
#include "wsat/randgen.hpp"
#include "wsat/rng.hpp"
#include "wsat/solver.hpp"

using namespace wsat;

namespace {

Instance instance_at(int n, double c, int trial) {
  return generate(params_with_c(n, 2, 1, 2, c, mix_seed(0xBE, trial)));
}

void BM_Generate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  int trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(instance_at(n, 1.0, trial++));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Generate)->RangeMultiplier(2)->Range(1000, 16000)->Complexity();

void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Instance> pool;
  for (int t = 0; t < 16; ++t) pool.push_back(instance_at(n, 1.0, t));
  size_t at = 0;
  for (auto _ : state) {
    const SolveOutcome outcome = wsat_solve(pool[at].formula, 2);
    benchmark::DoNotOptimize(outcome.status);
    at = (at + 1) % pool.size();
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Solve)->RangeMultiplier(2)->Range(1000, 16000)->Complexity();

void BM_Reduce(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = instance_at(n, 1.0, 0);
  const FrozenSet frozen = find_k_frozen(inst.formula, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduce(inst.formula, frozen.vars));
  }
}
BENCHMARK(BM_Reduce)->RangeMultiplier(4)->Range(1000, 16000);

void BM_DpCombine(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  SplitMix64 rng(77);
  std::vector<std::vector<int>> lists(static_cast<size_t>(m));
  for (auto& list : lists) {
    list.push_back(0);
    for (int v = 1; v <= 6; ++v)
      if (rng.next_below(2)) list.push_back(v);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(dp_combine(lists, 6));
  }
}
BENCHMARK(BM_DpCombine)->RangeMultiplier(4)->Range(64, 4096);

void BM_OracleSolve(benchmark::State& state) {
  const Instance inst = generate(params_with_c(24, 2, 1, 3, 2.0, 99));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_solve(inst.formula, 3));
  }
}
BENCHMARK(BM_OracleSolve);

} // namespace

BENCHMARK_MAIN();
