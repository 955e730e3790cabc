#include <benchmark/benchmark.h>

#include "tracelab/channel.hpp"
#include "tracelab/prober.hpp"
#include "tracelab/sweep.hpp"

using namespace tracelab;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_Probe(benchmark::State& state) {
  FunctionalSpec f{FunctionalKind::PsiJoint, 0.5, 0.5, 1.0, 1.0};
  ProbeConfig cfg;
  cfg.dim = 3;
  cfg.trials = 500;
  cfg.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(probe(f, cfg).min_gap);
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_DpiBatch(benchmark::State& state) {
  DpiBatchConfig cfg;
  cfg.spec = {EntropyKind::Sandwiched, 2.0};
  cfg.trials = 300;
  cfg.dims = {2, 3};
  cfg.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_dpi_batch(cfg).min_gap);
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_Sweep(benchmark::State& state) {
  SweepSpec spec;
  spec.functional = "gamma";
  spec.axes = {parse_axis("p=-1:2:0.25"), parse_axis("s=0.5:2:0.5")};
  spec.probe.trials = 100;
  spec.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec).size());
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_Probe)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DpiBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
