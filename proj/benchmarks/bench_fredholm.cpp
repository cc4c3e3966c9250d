#include <benchmark/benchmark.h>

#include "pngtoda/closed_forms.hpp"
#include "pngtoda/fredholm.hpp"
#include "pngtoda/kernel.hpp"

using namespace png;

namespace {

void BM_KernelAssembly(benchmark::State& state) {
  const auto h = HeightFunction::two_step();
  const KernelOptions opts{state.range(0), 40};
  for (auto _ : state) benchmark::DoNotOptimize(matrix_kernel(h, 1.0, {0.2, 0.9}, {3, 3}, opts));
}
BENCHMARK(BM_KernelAssembly)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

// One point, fixed truncation M.
void BM_FredholmFixed(benchmark::State& state) {
  FredholmOptions opts;
  opts.adaptive = false;
  opts.block_size = state.range(0);
  const auto h = HeightFunction::narrow_wedge(0.0);
  for (auto _ : state) benchmark::DoNotOptimize(png_cdf(h, 1.0, {0.0}, {3}, opts));
}
BENCHMARK(BM_FredholmFixed)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

// Adaptive evaluation with n points on two-step data.
void BM_FredholmPoints(benchmark::State& state) {
  const long n = state.range(0);
  std::vector<double> xs;
  std::vector<long> rs;
  for (long i = 0; i < n; ++i) {
    xs.push_back(-0.3 + 0.5 * static_cast<double>(i));
    rs.push_back(3);
  }
  const auto h = HeightFunction::two_step();
  for (auto _ : state) benchmark::DoNotOptimize(png_cdf(h, 1.0, xs, rs));
}
BENCHMARK(BM_FredholmPoints)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_NarrowWedgeToeplitz(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(narrow_wedge_toeplitz(1.0, state.range(0)));
}
BENCHMARK(BM_NarrowWedgeToeplitz)->Arg(4)->Arg(16);

}  // namespace
