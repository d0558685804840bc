#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "camo/corpus.hpp"
#include "camo/embedding.hpp"
#include "camo/stats.hpp"
#include "camo/vmf.hpp"

namespace camo {

enum class SizeClass { kSmall, kMedium, kLarge, kNone };

/// small: [5, 10), medium: [10, 50), large: [50, 500] items.
SizeClass classify_size(std::size_t item_count) noexcept;
const char* to_string(SizeClass c) noexcept;

struct ScoredName {
  std::string name;
  std::string source_repo;  // empty for local files
  double simple = 0.0;
  double cluster = 0.0;
  double norm_simple = 0.0;
  double norm_cluster = 0.0;
  bool cluster_fallback = false;
};

struct DirectoryResult {
  std::string repo_id;
  std::string dir_path;
  std::size_t item_count = 0;
  SizeClass size_class = SizeClass::kNone;
  int k_star = 1;  // order selected on the full directory
  bool cluster_fallback = false;
  std::vector<ScoredName> locals;   // leave-one-out
  std::vector<ScoredName> sampled;  // cross-repository decoys
};

struct MetricSummary {
  double local_median = 0.0;
  double sampled_median = 0.0;
  KsResult ks;
};

struct StratumResult {
  SizeClass size_class = SizeClass::kNone;
  std::size_t directories = 0;
  std::optional<KsResult> simple;
  std::optional<KsResult> cluster;
};

struct ExperimentOptions {
  std::optional<std::size_t> max_directories;  // seeded subsample when set
  unsigned jobs = 1;
  bool include_subdirs = false;  // score subdirectory names as well as files
};

struct ExperimentReport {
  std::vector<DirectoryResult> per_directory;
  MetricSummary simple;
  MetricSummary cluster;
  std::array<StratumResult, 3> strata;  // small, medium, large
  std::optional<PowerLawFit> power_law;  // over item counts of eligible directories

  std::size_t eligible_directories = 0;
  std::size_t skipped_directories = 0;
  std::string provider_id;
  std::uint64_t seed = 0;
  int samples_per_directory = 1;

  // Pooled normalized scores, in directory order.
  std::vector<double> local_simple, sampled_simple, local_cluster, sampled_cluster;
};

/// Local-versus-sampled evaluation over every eligible directory (at least
/// five items). Locals are scored leave-one-out; decoys are scored against
/// the directory minus any file of the same name. Each directory's
/// combined batch is max-normalized per metric before pooling. Directories
/// with fewer than two scoreable names, or whose embeddings cancel out, are
/// skipped and counted. Output is identical for any `jobs` value.
ExperimentReport run_experiment(std::span<const RepoManifest> manifests,
                                const EmbeddingProvider& provider, const FitConfig& fit_cfg,
                                const SamplePlan& plan, const ExperimentOptions& options = {});

}  // namespace camo
