#include <benchmark/benchmark.h>

#include <random>

#include "gfc/gfc.hpp"

namespace {

gfc::Field RandomPlane(std::size_t side, std::size_t channels = 1, std::size_t rank = 2) {
  gfc::Geometry g;
  g.shape = rank == 2 ? gfc::Shape({side, side}) : gfc::Shape({side, side, side});
  g.channels = channels;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::vector<double> v(g.element_count());
  for (auto& x : v) x = normal(rng);
  return gfc::Field::FromValues(g, std::move(v));
}

void BM_Solve2D(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const gfc::Field L = RandomPlane(side);
  gfc::KernelCache cache;
  benchmark::DoNotOptimize(gfc::SolveLaplacian(L, {}, cache));
  for (auto _ : state) benchmark::DoNotOptimize(gfc::SolveLaplacian(L, {}, cache));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(side * side));
}
BENCHMARK(BM_Solve2D)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNLogN);

void BM_Solve3D(benchmark::State& state) {
  const gfc::Field L = RandomPlane(static_cast<std::size_t>(state.range(0)), 1, 3);
  gfc::KernelCache cache;
  for (auto _ : state) benchmark::DoNotOptimize(gfc::SolveLaplacian(L, {}, cache));
}
BENCHMARK(BM_Solve3D)->Arg(16)->Arg(32)->Arg(56);

void BM_BuildKernel(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gfc::BuildGreenKernel(gfc::Shape({side, side})));
}
BENCHMARK(BM_BuildKernel)->Arg(64)->Arg(256);

void BM_GidForward(benchmark::State& state) {
  const gfc::Field v = RandomPlane(static_cast<std::size_t>(state.range(0)), 8);
  const gfc::LayerSpec spec = gfc::MakeLayerSpec(gfc::LayerKind::kGid, 8);
  for (auto _ : state) benchmark::DoNotOptimize(gfc::GidForward(v, spec));
}
BENCHMARK(BM_GidForward)->Arg(28)->Arg(64);

void BM_GidAdjoint(benchmark::State& state) {
  const gfc::Field v = RandomPlane(static_cast<std::size_t>(state.range(0)), 8);
  const gfc::LayerSpec spec = gfc::MakeLayerSpec(gfc::LayerKind::kGid, 8);
  for (auto _ : state) benchmark::DoNotOptimize(gfc::LayerAdjoint(v, v, spec));
}
BENCHMARK(BM_GidAdjoint)->Arg(28)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
