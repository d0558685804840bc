#pragma once

#include <map>
#include <span>
#include <vector>

#include "camo/vector.hpp"
#include "camo/vmf.hpp"

namespace camo {

struct SilhouetteResult {
  std::vector<double> per_point;  // s(i) in [-1, 1]
  double mean = 0.0;              // ms
  int k = 0;                      // number of distinct clusters present
};

/// Cosine-distance silhouette on a hard partition. Cluster labels are
/// arbitrary integers. Singleton clusters score 0, as does any point with
/// a(i) = b(i) = 0. Throws InvalidInput for fewer than two points, length
/// mismatch, or fewer than two distinct clusters.
SilhouetteResult silhouette_scores(std::span<const EmbeddingVector> points,
                                   std::span<const int> assignments);

struct ModelSelection {
  int k_star = 0;
  FitResult best;
  std::map<int, double> ms_by_k;  // -1 marks a fit that collapsed below two clusters
  bool all_collapsed = false;
};

/// Fits k = k_min..k_max (k_max capped at |points| - 1) and keeps the fit
/// with the highest mean silhouette, ties to the smaller k. Fits for
/// different k run on up to `jobs` threads; the result does not depend on
/// the job count.
ModelSelection select_k(std::span<const EmbeddingVector> points, int k_min, int k_max,
                        const FitConfig& cfg, unsigned jobs = 1);

}  // namespace camo
