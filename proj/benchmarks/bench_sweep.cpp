#include <benchmark/benchmark.h>

#include "heraldkit/sweep.hpp"

namespace {

using namespace heraldkit;

void BM_Sweep(benchmark::State& state) {
  SweepPlan plan;
  plan.axes = {car_axis(3.0, 500.0, 40), SweepAxis{Parameter::MuH, 0.01, 1.0, 40}};
  plan.fixed.mu_s = 0.7;
  plan.fixed.clicks = 2;
  plan.fixed.target = 2;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(plan, static_cast<unsigned>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(plan.size()));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace
