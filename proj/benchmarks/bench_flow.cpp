#include <benchmark/benchmark.h>

#include "horoflow/flow.hpp"
#include "horoflow/shapes.hpp"

namespace hf = horoflow;

static void BM_EulerStep(benchmark::State& state) {
  hf::FlowParams p;
  p.F = hf::CurvatureFunction::quotient(1);
  const auto s = hf::make_state(hf::perturbed_sphere(1, static_cast<std::size_t>(state.range(0)), 0.8, 0.02, 3));
  const double dt = hf::stable_dt(s.geom, p.F, p.cflFactor);
  for (auto _ : state) benchmark::DoNotOptimize(hf::step(s, p, dt));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EulerStep)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_HeunStepArc(benchmark::State& state) {
  hf::FlowParams p;
  p.F = hf::CurvatureFunction::quotient(2);
  p.secondOrderStepper = true;
  const auto s = hf::make_state(hf::perturbed_sphere(2, static_cast<std::size_t>(state.range(0)), 0.8, 0.05, 2));
  const double dt = hf::stable_dt(s.geom, p.F, p.cflFactor);
  for (auto _ : state) benchmark::DoNotOptimize(hf::step(s, p, dt));
}
BENCHMARK(BM_HeunStepArc)->RangeMultiplier(2)->Range(64, 512);

static void BM_Diagnostics(benchmark::State& state) {
  const auto F = hf::CurvatureFunction::quotient(1);
  const auto s = hf::make_state(hf::perturbed_sphere(1, 512, 0.8, 0.02, 3));
  const bool withFit = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(hf::diagnostics(s, F, withFit));
}
BENCHMARK(BM_Diagnostics)->Arg(0)->Arg(1);
