#include <benchmark/benchmark.h>

#include "pngtoda/simulate.hpp"

using namespace png;

namespace {

const std::vector<double> kXs{-0.7, 0.1, 0.5, 1.3};

void BM_GenerateField(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0)) / 4.0;
  std::uint64_t s = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_field(sample_seed(1, s++), t, kXs));
}
BENCHMARK(BM_GenerateField)->Arg(2)->Arg(4)->Arg(8);

template <bool EventDriven>
void BM_Sampler(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0)) / 4.0;
  const auto h = HeightFunction::two_step();
  const auto field = generate_field(7, t, kXs);
  for (auto _ : state) {
    if constexpr (EventDriven)
      benchmark::DoNotOptimize(sample_event_driven(h, t, kXs, field));
    else
      benchmark::DoNotOptimize(sample_lastpassage(h, t, kXs, field));
  }
  state.counters["points"] = static_cast<double>(field.points.size());
}
BENCHMARK_TEMPLATE(BM_Sampler, true)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK_TEMPLATE(BM_Sampler, false)->Arg(2)->Arg(4)->Arg(8);

void BM_SimulateBatch(benchmark::State& state) {
  const auto h = HeightFunction::two_step();
  for (auto _ : state) benchmark::DoNotOptimize(simulate_batch(h, 1.0, {0.2, 0.9}, state.range(0), 3));
}
BENCHMARK(BM_SimulateBatch)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
