// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "smurf/smurf.hpp"

using namespace smurf;

namespace {

void BM_AssembleH(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuadratureGrid grid(3, 17);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_H(n, 3, grid));
}

void BM_AssembleHReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuadratureGrid grid(3, 17);
  for (auto _ : state) benchmark::DoNotOptimize(reference::assemble_H(n, 3, grid));
}

void BM_AssembleHFactored(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuadratureGrid grid(3, 17);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_H_factored(n, 3, grid));
}

void BM_Synthesize(benchmark::State& state) {
  const auto target = builtin("softmax3_c1");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(target, n, 3));
}

EvalOptions eval_opts() {
  EvalOptions o;
  o.lengths = {256};
  o.seed = 1;
  return o;
}

void BM_Evaluate(benchmark::State& state) {
  const auto target = builtin("softmax2_c1");
  const auto table = synthesize(target, 4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_table(table, target, eval_opts()));
}

void BM_EvaluateReference(benchmark::State& state) {
  const auto target = builtin("softmax2_c1");
  const auto table = synthesize(target, 4, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::evaluate_table(table, target, eval_opts()));
}

}  // namespace

BENCHMARK(BM_AssembleH)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleHReference)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleHFactored)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Synthesize)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateReference)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
