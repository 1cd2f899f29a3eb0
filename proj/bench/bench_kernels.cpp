// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to compare.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "netdelay/generate.hpp"
#include "netdelay/kernels.hpp"
#include "netdelay/stats.hpp"

using namespace netdelay;

namespace {

const PathParameters kParams = PathParameters::from_rate(0.009, 100000.0, 1000.0 / 3.0, 100);
const DelayDistribution kNormal{DistKind::TruncatedNormal, kParams};

std::vector<double> samples(std::size_t n) {
  std::mt19937_64 rng(n);
  std::exponential_distribution<double> ex(kParams.lambda());
  std::vector<double> v(n);
  for (auto& x : v) x = fixed_delay(kParams, 100) + ex(rng);
  return v;
}

template <bool Parallel>
void BM_CdfBatch(benchmark::State& state) {
  const auto d = samples(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(d.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::cdf_batch(kNormal, d, 100, out);
    else
      kernels::serial::cdf_batch(kNormal, d, 100, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Moments(benchmark::State& state) {
  const auto x = samples(static_cast<std::size_t>(state.range(0)));
  const auto y = samples(static_cast<std::size_t>(state.range(0)) + 1);
  std::span<const double> ys(y.data(), x.size());
  for (auto _ : state) {
    kernels::Moments m = Parallel ? kernels::parallel::centered_moments(x, ys)
                                  : kernels::serial::centered_moments(x, ys);
    benchmark::DoNotOptimize(m);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_CellCounts(benchmark::State& state) {
  const auto x = samples(static_cast<std::size_t>(state.range(0)));
  std::vector<double> edges;
  for (int k = 1; k < 26; ++k) edges.push_back(quantile(kParams, k / 26.0, 100));
  for (auto _ : state) {
    auto c = Parallel ? kernels::parallel::cell_counts(x, edges) : kernels::serial::cell_counts(x, edges);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WindowScanAllDisjoint(benchmark::State& state) {
  const auto trace = generate_uniform_stream({.params = kParams, .seed = 7}, 20000, 100, 1.0);
  WindowScanOptions opts;
  opts.mode = WindowMode::AllDisjoint;
  for (auto _ : state) {
    auto scan = window_scan(trace, kDefaultWindowSizes, DistKind::Exponential, opts);
    benchmark::DoNotOptimize(scan.results.data());
  }
}

}  // namespace

BENCHMARK(BM_CdfBatch<false>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_CdfBatch<true>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Moments<false>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Moments<true>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_CellCounts<false>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_CellCounts<true>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_WindowScanAllDisjoint)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
