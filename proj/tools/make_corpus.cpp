// Writes the synthetic themed manifest used by the evaluation demo.
//
//   camo_make_corpus [repos=200] [seed=42] > data/synthetic_manifest.jsonl

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "camo/synthetic.hpp"

int main(int argc, char** argv) {
  std::size_t repos = 200;
  std::uint64_t seed = 42;
  try {
    if (argc > 1) repos = std::stoul(argv[1]);
    if (argc > 2) seed = std::stoull(argv[2]);
  } catch (const std::exception&) {
    std::fprintf(stderr, "usage: %s [repos] [seed]\n", argv[0]);
    return 2;
  }
  std::cout << camo::manifest_to_jsonl(camo::make_themed_corpus(seed, repos));
  return 0;
}
