#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "camo/embedding.hpp"

namespace {

const std::vector<std::string> kNames = {"data1.xls",       "regressions.r", "reportv2.pdf",
                                         "wedding_invites.xls", "src_main_loop.cpp",
                                         "a"};

void BM_HashedEmbed(benchmark::State& state) {
  camo::NgramConfig cfg;
  cfg.dim = static_cast<int>(state.range(0));
  const camo::HashedEmbedder embedder(cfg);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(embedder.embed(kNames[i++ % kNames.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_HashedEmbed)->Arg(50)->Arg(100)->Arg(300);

void BM_ExtractNgrams(benchmark::State& state) {
  const camo::NgramConfig cfg;
  const std::string token(static_cast<std::size_t>(state.range(0)), 'x');
  for (auto _ : state) benchmark::DoNotOptimize(camo::extract_ngrams(token, cfg));
}
BENCHMARK(BM_ExtractNgrams)->Arg(8)->Arg(32)->Arg(128);

}  // namespace
