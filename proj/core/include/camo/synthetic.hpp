#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "camo/corpus.hpp"

namespace camo {

/// Deterministic demo corpus: each repository picks one naming theme (a
/// family of stems and extensions, disjoint between themes) and holds two
/// or three directories of themed filenames. Directory sizes are mostly
/// small (5-9 files) with some medium ones (10-24 files). Every repository
/// has between 10 and 500 items.
std::vector<RepoManifest> make_themed_corpus(std::uint64_t seed, std::size_t repos);

/// Every repository holds the same single directory of identical names.
std::vector<RepoManifest> make_uniform_corpus(std::size_t repos, std::size_t files_per_repo);

/// One JSON object per line, keys in {repo_id, paths} order.
std::string manifest_to_jsonl(std::span<const RepoManifest> manifests);

}  // namespace camo
