// Serial reference vs OpenMP kernels. Pass the execution mode as the range
// argument: 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include "geomdet/code_distance.hpp"
#include "geomdet/detection.hpp"
#include "geomdet/sequence.hpp"
#include "oracle/fixtures.hpp"

using namespace geomdet;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_Simulate(benchmark::State& state) {
  const auto ch = fixtures::awgn(1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_error_rate(ch, Prior::uniform(3), 5, 200000, 1, mode(state)));
  state.SetItemsProcessed(state.iterations() * 200000);
}

void BM_MonteCarloDistance(benchmark::State& state) {
  const auto ch = fixtures::laplace(1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        codeword_distance_joint_mc(ch, Prior::uniform(3), {0, 1, 2, 0}, {1, 1, 0, 2}, 200000, 2, mode(state)));
  state.SetItemsProcessed(state.iterations() * 200000);
}

void BM_CodebookEnumeration(benchmark::State& state) {
  const auto ch = fixtures::awgn(1.0);
  const SequenceObservation seq = {0.1, -0.4, 1.2, 0.7, -1.1, 0.0, 0.3, -0.2, 0.9, 1.4, -0.6, 0.2};
  const Codeword c(seq.size(), 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(sequence_posterior(ch, Prior::uniform(3), seq, c, mode(state)));
  state.SetItemsProcessed(state.iterations() * 531441);
}

}  // namespace

BENCHMARK(BM_Simulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloDistance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CodebookEnumeration)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
