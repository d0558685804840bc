#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace camo {

/// One repository's file list. Paths are slash-separated, relative, unique.
struct RepoManifest {
  std::string repo_id;
  std::vector<std::string> paths;
};

/// A directory and its immediate children. `item_names` holds files and
/// subdirectories (sorted); `file_names` is the subset that are files.
struct DirectoryRecord {
  std::string repo_id;
  std::string dir_path;  // "." for the repository root
  std::vector<std::string> item_names;
  std::vector<std::string> file_names;
  std::size_t item_count = 0;
  std::string warning;  // set when a scanned directory could not be read

  bool operator==(const DirectoryRecord&) const = default;
};

struct SamplePlan {
  std::uint64_t seed = 42;
  int samples_per_directory = 1;
};

inline constexpr std::size_t kMinRepoItems = 10;
inline constexpr std::size_t kMaxRepoItems = 500;
inline constexpr std::size_t kMinDirectoryItems = 5;

/// Parses a JSON-Lines manifest ({"repo_id": ..., "paths": [...]} per
/// line; blank lines ignored). Throws ParseError with the line number for
/// malformed lines or invalid paths, DuplicateError for a repeated repo_id.
std::vector<RepoManifest> load_manifest(const std::filesystem::path& path);
std::vector<RepoManifest> parse_manifest(std::string_view text);

/// Files plus distinct directories implied by the paths (root excluded).
std::size_t repository_item_count(const RepoManifest& repo);

/// Keeps repositories with an item count in [10, 500].
std::vector<RepoManifest> filter_repositories(std::span<const RepoManifest> manifests);

/// Every directory (root included) with its immediate children, in
/// (repo_id, dir_path) order. Only records with at least `min_items`
/// items are returned.
std::vector<DirectoryRecord> enumerate_directories(std::span<const RepoManifest> manifests,
                                                   std::size_t min_items = kMinDirectoryItems);

/// Draws plan.samples_per_directory file basenames, each from a uniformly
/// chosen repository other than target.repo_id. The stream is keyed on
/// (seed, repo_id, dir_path), so results do not depend on call order.
/// Throws InvalidInput when no other repository exists.
std::vector<std::string> sample_cross_repo(const DirectoryRecord& target,
                                           std::span<const RepoManifest> manifests,
                                           const SamplePlan& plan);

/// Like sample_cross_repo but also reports the source repo of each draw.
struct SampledName {
  std::string name;
  std::string repo_id;
};
std::vector<SampledName> sample_cross_repo_detailed(const DirectoryRecord& target,
                                                    std::span<const RepoManifest> manifests,
                                                    const SamplePlan& plan);

struct ScanOptions {
  bool include_hidden = true;
  std::optional<int> max_depth;  // root is depth 0; unlimited when empty
};

/// Walks a live directory tree without following symlinks (a symlink is
/// counted as an item but never descended into). Unreadable directories
/// produce a record with item_count 0 and `warning` set. Records are in
/// dir_path order; repo_id is the root path as given.
std::vector<DirectoryRecord> scan_filesystem(const std::filesystem::path& root,
                                             const ScanOptions& options = {});

}  // namespace camo
