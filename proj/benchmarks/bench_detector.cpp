#include <benchmark/benchmark.h>

#include "heraldkit/detector.hpp"
#include "heraldkit/heralding.hpp"

namespace {

using namespace heraldkit;

void BM_PovmDiagonal(benchmark::State& state) {
  const ClickDetectorArray det(4, 0.6);
  const auto n_max = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(povm_diagonal(det, 2, n_max));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PovmDiagonal)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_Herald(benchmark::State& state) {
  const HeraldConfig config{nbar_from_car(static_cast<double>(state.range(0))),
                            ClickDetectorArray(4, 0.8), 1};
  for (auto _ : state) benchmark::DoNotOptimize(herald(config));
}
BENCHMARK(BM_Herald)->Arg(3)->Arg(15)->Arg(500);

}  // namespace
