#include <benchmark/benchmark.h>

#include <vector>

#include "camo/random.hpp"
#include "camo/special.hpp"
#include "camo/stats.hpp"
#include "camo/vmf.hpp"

namespace {

// Arguments: nu, x. Each pair lands in a different evaluation regime.
void BM_LogBesselI(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0));
  const double x = static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(camo::log_bessel_i(nu, x));
}
BENCHMARK(BM_LogBesselI)
    ->Args({0, 5})
    ->Args({0, 1000})
    ->Args({49, 30})
    ->Args({49, 10000})
    ->Args({512, 1000});

void BM_SolveKappa(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(camo::solve_kappa(0.73, d));
}
BENCHMARK(BM_SolveKappa)->Arg(3)->Arg(100)->Arg(300);

void BM_KsTwoSample(benchmark::State& state) {
  camo::Rng rng(1);
  std::vector<double> a(static_cast<std::size_t>(state.range(0)));
  std::vector<double> b(a.size());
  for (auto& v : a) v = rng.normal();
  for (auto& v : b) v = rng.normal() + 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(camo::ks_two_sample(a, b));
}
BENCHMARK(BM_KsTwoSample)->Arg(1000)->Arg(100000);

void BM_PowerLawFit(benchmark::State& state) {
  camo::Rng rng(2);
  std::vector<long> x(static_cast<std::size_t>(state.range(0)));
  for (auto& v : x) v = 5 + static_cast<long>(rng.below(400));
  for (auto _ : state) benchmark::DoNotOptimize(camo::power_law_fit(x));
}
BENCHMARK(BM_PowerLawFit)->Arg(1000)->Arg(10000);

}  // namespace
