#include <numbers>

#include <benchmark/benchmark.h>

#include "horoflow/quermass.hpp"
#include "horoflow/shapes.hpp"
#include "horoflow/spherical_geometry.hpp"

namespace hf = horoflow;

static void BM_BuildGeometryLoop(benchmark::State& state) {
  const auto curve = hf::perturbed_sphere(1, static_cast<std::size_t>(state.range(0)), 0.8, 0.02, 3);
  for (auto _ : state) benchmark::DoNotOptimize(hf::build_geometry(curve));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildGeometryLoop)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

static void BM_BuildGeometryArc(benchmark::State& state) {
  const auto curve = hf::perturbed_sphere(2, static_cast<std::size_t>(state.range(0)), 0.8, 0.05, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hf::build_geometry(curve));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildGeometryArc)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_Quermassintegrals(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto curve = hf::off_center_sphere(n, 256, std::numbers::pi / 6, std::numbers::pi / 6);
  const auto g = hf::build_geometry(curve);
  for (auto _ : state) benchmark::DoNotOptimize(hf::quermassintegrals(g, curve));
}
BENCHMARK(BM_Quermassintegrals)->DenseRange(1, 4);

static void BM_SphereTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hf::sphere_table(static_cast<int>(state.range(0)), 64));
}
BENCHMARK(BM_SphereTable)->DenseRange(1, 3);
