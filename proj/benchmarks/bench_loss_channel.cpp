#include <benchmark/benchmark.h>

#include "heraldkit/heralding.hpp"
#include "heraldkit/loss_channel.hpp"

namespace {

using namespace heraldkit;

PhotonStatistics heralded(double car) {
  return herald(HeraldConfig{nbar_from_car(car), ClickDetectorArray(4, 0.5), 1}).statistics;
}

void BM_ApplyLoss(benchmark::State& state) {
  const auto stats = heralded(static_cast<double>(state.range(0)));
  const LossChannel loss(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(apply_loss(loss, stats));
  state.counters["n_max"] = static_cast<double>(stats.n_max());
}
BENCHMARK(BM_ApplyLoss)->Arg(3)->Arg(15)->Arg(500);

void BM_InvertLoss(benchmark::State& state) {
  const LossChannel loss(0.5);
  const auto lossy = apply_loss(loss, heralded(static_cast<double>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(invert_loss_detailed(loss, lossy));
}
BENCHMARK(BM_InvertLoss)->Arg(15)->Arg(500);

}  // namespace
