#include "camo/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>

#include "camo/error.hpp"
#include "camo/geometry.hpp"
#include "camo/log.hpp"
#include "camo/parallel.hpp"

namespace camo {

SilhouetteResult silhouette_scores(std::span<const EmbeddingVector> points,
                                   std::span<const int> assignments) {
  const std::size_t n = points.size();
  if (n < 2) throw InvalidInput("silhouette: need at least two points");
  if (assignments.size() != n) throw InvalidInput("silhouette: assignments length mismatch");

  // Compact labels in order of first appearance.
  std::unordered_map<int, std::size_t> index_of;
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = index_of.emplace(assignments[i], index_of.size());
    label[i] = it->second;
  }
  const std::size_t clusters = index_of.size();
  if (clusters < 2) throw InvalidInput("silhouette: need at least two distinct clusters");

  std::vector<std::size_t> size(clusters, 0);
  for (std::size_t c : label) ++size[c];

  SilhouetteResult out;
  out.k = static_cast<int>(clusters);
  out.per_point.resize(n);
  std::vector<double> dist_sum(clusters);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      dist_sum[label[j]] += cosine_distance(points[i], points[j]);
    }
    const std::size_t own = label[i];
    if (size[own] == 1) {
      out.per_point[i] = 0.0;
      continue;
    }
    const double a = dist_sum[own] / static_cast<double>(size[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < clusters; ++c) {
      if (c == own) continue;
      b = std::min(b, dist_sum[c] / static_cast<double>(size[c]));
    }
    const double denom = std::max(a, b);
    out.per_point[i] = denom > 0.0 ? std::clamp((b - a) / denom, -1.0, 1.0) : 0.0;
  }
  double total = 0.0;
  for (double s : out.per_point) total += s;
  out.mean = total / static_cast<double>(n);
  return out;
}

ModelSelection select_k(std::span<const EmbeddingVector> points, int k_min, int k_max,
                        const FitConfig& cfg, unsigned jobs) {
  if (points.size() < 3) throw InvalidInput("select_k: need at least three points");
  if (k_min < 2) throw InvalidInput("select_k: k_min must be >= 2");
  if (k_max < k_min) throw InvalidInput("select_k: k_max must be >= k_min");
  k_max = std::min(k_max, static_cast<int>(points.size()) - 1);
  if (k_max < k_min) {
    throw InvalidInput("select_k: too few points (" + std::to_string(points.size()) +
                       ") for k_min = " + std::to_string(k_min));
  }

  const auto count = static_cast<std::size_t>(k_max - k_min + 1);
  std::vector<FitResult> fits(count);
  std::vector<double> ms(count, -1.0);
  parallel_for(count, jobs, [&](std::size_t idx) {
    FitConfig c = cfg;
    c.k = k_min + static_cast<int>(idx);
    fits[idx] = fit_mixture(points, c);
    const auto& a = fits[idx].assignments;
    const bool two_clusters =
        std::adjacent_find(a.begin(), a.end(), std::not_equal_to<>()) != a.end();
    if (two_clusters) ms[idx] = silhouette_scores(points, a).mean;
  });

  ModelSelection sel;
  std::size_t best = count;
  for (std::size_t idx = 0; idx < count; ++idx) {
    sel.ms_by_k[k_min + static_cast<int>(idx)] = ms[idx];
    const bool collapsed = fits[idx].assignments.empty() ||
                           std::adjacent_find(fits[idx].assignments.begin(),
                                              fits[idx].assignments.end(),
                                              std::not_equal_to<>()) ==
                               fits[idx].assignments.end();
    if (collapsed) continue;
    if (best == count || ms[idx] > ms[best]) best = idx;
  }
  if (best == count) {
    warn("select_k: every fit collapsed to a single cluster; using k_min");
    sel.all_collapsed = true;
    best = 0;
  }
  sel.k_star = k_min + static_cast<int>(best);
  sel.best = std::move(fits[best]);
  return sel;
}

}  // namespace camo
