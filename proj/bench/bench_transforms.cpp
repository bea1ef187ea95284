// Serial reference path against the OpenMP path for the index- and
// grid-parallel workloads.

#include <benchmark/benchmark.h>

#include <vector>

#include "lebedev/transforms.hpp"

using namespace lebedev;

namespace {

Execution mode_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_Coefficients(benchmark::State& state) {
  const auto p = PeriodicProfile::builtin("sawtooth");
  for (auto _ : state) {
    auto c = coefficients_from_profile(p, KernelFamily::ProductKernel, 32, {}, mode_of(state));
    benchmark::DoNotOptimize(c.values.data());
  }
  label(state);
}

void BM_PhiGrid(benchmark::State& state) {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.25 * i);
  for (auto _ : state) {
    std::vector<double> out(grid.size());
    for_each_index(grid.size(), mode_of(state), [&](std::size_t i) {
      double s = 0.0;
      for (const auto& k : phi_kernels(8, grid[i])) s += k.value;
      out[i] = s;
    });
    benchmark::DoNotOptimize(out.data());
  }
  label(state);
}

void BM_ForwardAll(benchmark::State& state) {
  const auto p = PeriodicProfile::builtin("sin");
  auto f = [&](double x) { return build_f_from_profile_b(p, x).value; };
  for (auto _ : state) {
    auto c = forward_all(f, KernelFamily::SquaredKernel, 5, {}, mode_of(state));
    benchmark::DoNotOptimize(c.values.data());
  }
  label(state);
}

void BM_Roundtrip(benchmark::State& state) {
  const auto p = PeriodicProfile::builtin("sin");
  const std::vector<double> grid{0.2, 0.5, 1.0, 2.0, 4.0};
  for (auto _ : state) {
    auto r = roundtrip_report(p, KernelFamily::ProductKernel, 8, grid, {}, mode_of(state));
    benchmark::DoNotOptimize(r.max_abs_error);
  }
  label(state);
}

}  // namespace

BENCHMARK(BM_Coefficients)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhiGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForwardAll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Roundtrip)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
