#include <benchmark/benchmark.h>

#include <vector>

#include "camo/geometry.hpp"
#include "camo/model_selection.hpp"
#include "camo/random.hpp"
#include "camo/vmf.hpp"

namespace {

std::vector<camo::EmbeddingVector> points(std::size_t n, std::size_t d, std::uint64_t seed) {
  camo::Rng rng(seed);
  std::vector<camo::EmbeddingVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(d);
    for (auto& x : v) x = rng.normal();
    v[i % 3] += 4.0;  // three loose groups
    out.push_back(camo::l2_normalize(camo::EmbeddingVector(std::move(v))));
  }
  return out;
}

void BM_FitMixture(benchmark::State& state) {
  const auto pts = points(static_cast<std::size_t>(state.range(0)), 100, 3);
  camo::FitConfig cfg;
  cfg.k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(camo::fit_mixture(pts, cfg));
}
BENCHMARK(BM_FitMixture)->Args({12, 3})->Args({50, 3})->Args({200, 4})->Unit(benchmark::kMillisecond);

void BM_Silhouette(benchmark::State& state) {
  const auto pts = points(static_cast<std::size_t>(state.range(0)), 100, 4);
  std::vector<int> labels(pts.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % 3);
  for (auto _ : state) benchmark::DoNotOptimize(camo::silhouette_scores(pts, labels));
}
BENCHMARK(BM_Silhouette)->Arg(12)->Arg(64)->Arg(500);

void BM_SelectK(benchmark::State& state) {
  const auto pts = points(static_cast<std::size_t>(state.range(0)), 100, 5);
  const camo::FitConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(camo::select_k(pts, 2, 8, cfg));
}
BENCHMARK(BM_SelectK)->Arg(12)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
