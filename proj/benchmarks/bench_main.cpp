#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "gravwave/dispersion.hpp"
#include "gravwave/dtn.hpp"
#include "gravwave/paracalc.hpp"
#include "gravwave/spectral.hpp"
#include "gravwave/zakharov.hpp"

using namespace gravwave;

namespace {

constexpr double kR = 4 * std::numbers::pi;

RealField bump(const Grid& g, double eps) {
  const double c = g.period() / 2;
  return sample(g, [&](double x, double y) {
    return eps * std::exp(-((x - c) * (x - c) + (y - c) * (y - c)) / 2);
  });
}

RealField wave(const Grid& g) {
  return sample(g, [&](double x, double y) { return std::cos(2 * std::numbers::pi * (x + 2 * y) / g.period()); });
}

void BM_Transform(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), kR);
  const RealField f = bump(g, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(transform(f)));
}
BENCHMARK(BM_Transform)->RangeMultiplier(2)->Range(32, 512);

void BM_DtnSeries(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), kR);
  const RealField h = bump(g, 0.01), phi = wave(g);
  for (auto _ : state) benchmark::DoNotOptimize(dtn_series(h, phi, 2));
}
BENCHMARK(BM_DtnSeries)->RangeMultiplier(2)->Range(32, 256);

void BM_DtnFull(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), kR);
  const DtnSolver solver(g);
  const RealField h = bump(g, 0.01), phi = wave(g);
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(h, phi));
}
BENCHMARK(BM_DtnFull)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);

void BM_Paraproduct(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), kR);
  const RealField a = bump(g, 1.0), f = wave(g);
  for (auto _ : state) benchmark::DoNotOptimize(paraproduct(a, f));
}
BENCHMARK(BM_Paraproduct)->RangeMultiplier(2)->Range(32, 256);

void BM_Step(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), kR);
  Zakharov engine(g, {DtnParams{}, static_cast<DtnMode>(state.range(1)), false});
  SurfaceState s = make_state(bump(g, 0.01), RealField(g));
  for (auto _ : state) s = engine.step(s, 0.01);
}
BENCHMARK(BM_Step)
    ->Args({32, static_cast<int>(DtnMode::series2)})
    ->Args({64, static_cast<int>(DtnMode::series2)})
    ->Args({32, static_cast<int>(DtnMode::full)})
    ->Unit(benchmark::kMillisecond);

void BM_W6Norm(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), 100 * std::numbers::pi);
  const SpectralField u0 = gaussian_data(g);
  for (auto _ : state) benchmark::DoNotOptimize(w6_norm(propagate_linear(u0, 10.0)));
}
BENCHMARK(BM_W6Norm)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
