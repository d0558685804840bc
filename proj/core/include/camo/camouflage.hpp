#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "camo/embedding.hpp"
#include "camo/model_selection.hpp"
#include "camo/vector.hpp"
#include "camo/vmf.hpp"

namespace camo {

/// Below this many names the cluster score falls back to the simple score.
inline constexpr std::size_t kMinClusterItems = 5;
inline constexpr int kClusterKMin = 2;
inline constexpr int kClusterKMax = 8;

/// A directory's filenames and their embeddings. Immutable once built.
class DirectoryContext {
 public:
  /// Embeds every name with `provider`. Throws InvalidInput for an empty
  /// list or duplicate names.
  DirectoryContext(std::string dir_path, std::vector<std::string> names,
                   const EmbeddingProvider& provider);

  const std::string& dir_path() const noexcept { return dir_path_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<EmbeddingVector>& vectors() const noexcept { return vectors_; }
  const std::string& provider_id() const noexcept { return provider_id_; }
  std::size_t size() const noexcept { return names_.size(); }

  /// Copy of this context without the entry named `name` (if present).
  DirectoryContext without(std::string_view name) const;

 private:
  DirectoryContext() = default;

  std::string dir_path_;
  std::vector<std::string> names_;
  std::vector<EmbeddingVector> vectors_;
  std::string provider_id_;
};

/// Fitted cluster structure of one directory, reusable across candidates.
struct ClusterModel {
  bool fallback = false;          // fewer than kMinClusterItems names
  int k_star = 1;
  std::vector<EmbeddingVector> means;  // component means; the mean direction on fallback
  std::map<int, double> ms_by_k;
  FitResult fit;                  // empty on fallback
};

struct ClusterScore {
  double score = 0.0;
  int k_star = 1;
  int nearest = 0;
  bool fallback = false;
};

struct CamouflageReport {
  std::string candidate;
  double simple_score = 0.0;
  double cluster_score = 0.0;
  int k_star = 1;
  int nearest_component = 0;
  double normalized_simple = 0.0;
  double normalized_cluster = 0.0;
  bool cluster_fallback = false;
};

/// Cosine distance from the candidate to the directory's mean direction.
/// Throws DegenerateDirectory when the mean vanishes.
double simple_score(std::string_view candidate, const DirectoryContext& ctx,
                    const EmbeddingProvider& provider);
double simple_score(const EmbeddingVector& candidate, const DirectoryContext& ctx);

ClusterModel fit_directory(const DirectoryContext& ctx, const FitConfig& cfg,
                           unsigned jobs = 1);
ClusterScore cluster_score(const EmbeddingVector& candidate, const ClusterModel& model);
ClusterScore cluster_score(std::string_view candidate, const DirectoryContext& ctx,
                           const EmbeddingProvider& provider, const FitConfig& cfg);

/// Divides by the batch maximum. An all-zero batch is returned unchanged
/// with a warning; negative or non-finite scores throw InvalidInput.
std::vector<double> normalize_per_directory(std::span<const double> scores);

/// Scores every candidate against ctx (one cluster fit shared by all) and
/// returns reports sorted ascending by cluster score, stable. Normalized
/// fields are max-normalized over the candidate batch.
std::vector<CamouflageReport> rank_candidates(std::span<const std::string> candidates,
                                              const DirectoryContext& ctx,
                                              const EmbeddingProvider& provider,
                                              const FitConfig& cfg, unsigned jobs = 1);

}  // namespace camo
