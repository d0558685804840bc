#include "camo/camouflage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "camo/error.hpp"
#include "camo/geometry.hpp"
#include "camo/log.hpp"

namespace camo {

namespace {

void check_provider(const DirectoryContext& ctx, const EmbeddingProvider& provider) {
  if (provider.id() != ctx.provider_id()) {
    throw ConfigError("provider '" + provider.id() + "' does not match directory context '" +
                      ctx.provider_id() + "'");
  }
}

EmbeddingVector directory_mean(const DirectoryContext& ctx) {
  try {
    return mean_direction(ctx.vectors()).mu;
  } catch (const DegenerateMean&) {
    throw DegenerateDirectory("directory '" + ctx.dir_path() +
                              "' has no mean direction (embeddings cancel out)");
  }
}

}  // namespace

DirectoryContext::DirectoryContext(std::string dir_path, std::vector<std::string> names,
                                   const EmbeddingProvider& provider)
    : dir_path_(std::move(dir_path)), names_(std::move(names)), provider_id_(provider.id()) {
  if (names_.empty()) throw InvalidInput("directory '" + dir_path_ + "' has no names");
  std::unordered_set<std::string> seen;
  vectors_.reserve(names_.size());
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw InvalidInput("duplicate name in directory: " + n);
    vectors_.push_back(provider.embed(n));
  }
}

DirectoryContext DirectoryContext::without(std::string_view name) const {
  DirectoryContext out;
  out.dir_path_ = dir_path_;
  out.provider_id_ = provider_id_;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) continue;
    out.names_.push_back(names_[i]);
    out.vectors_.push_back(vectors_[i]);
  }
  if (out.names_.empty()) {
    throw InvalidInput("removing '" + std::string(name) + "' leaves directory empty");
  }
  return out;
}

double simple_score(const EmbeddingVector& candidate, const DirectoryContext& ctx) {
  return cosine_distance(candidate, directory_mean(ctx));
}

double simple_score(std::string_view candidate, const DirectoryContext& ctx,
                    const EmbeddingProvider& provider) {
  check_provider(ctx, provider);
  return simple_score(provider.embed(candidate), ctx);
}

ClusterModel fit_directory(const DirectoryContext& ctx, const FitConfig& cfg, unsigned jobs) {
  ClusterModel model;
  if (ctx.size() < kMinClusterItems) {
    model.fallback = true;
    model.k_star = 1;
    model.means.push_back(directory_mean(ctx));
    return model;
  }
  const int k_max = std::min(kClusterKMax, static_cast<int>(ctx.size()) - 1);
  ModelSelection sel = select_k(ctx.vectors(), kClusterKMin, k_max, cfg, jobs);
  model.k_star = sel.k_star;
  model.ms_by_k = std::move(sel.ms_by_k);
  for (const auto& c : sel.best.mixture.components) model.means.push_back(c.mu);
  model.fit = std::move(sel.best);
  return model;
}

ClusterScore cluster_score(const EmbeddingVector& candidate, const ClusterModel& model) {
  ClusterScore out;
  out.k_star = model.k_star;
  out.fallback = model.fallback;
  out.score = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < model.means.size(); ++j) {
    const double d = cosine_distance(candidate, model.means[j]);
    if (d < out.score) {
      out.score = d;
      out.nearest = static_cast<int>(j);
    }
  }
  return out;
}

ClusterScore cluster_score(std::string_view candidate, const DirectoryContext& ctx,
                           const EmbeddingProvider& provider, const FitConfig& cfg) {
  check_provider(ctx, provider);
  return cluster_score(provider.embed(candidate), fit_directory(ctx, cfg));
}

std::vector<double> normalize_per_directory(std::span<const double> scores) {
  if (scores.empty()) throw InvalidInput("normalize_per_directory: empty batch");
  double max = 0.0;
  for (double s : scores) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw InvalidInput("normalize_per_directory: scores must be finite and >= 0");
    }
    max = std::max(max, s);
  }
  std::vector<double> out(scores.begin(), scores.end());
  if (max == 0.0) {
    warn("normalize_per_directory: all scores are zero");
    return out;
  }
  for (double& s : out) s = (s == max) ? 1.0 : s / max;
  return out;
}

std::vector<CamouflageReport> rank_candidates(std::span<const std::string> candidates,
                                              const DirectoryContext& ctx,
                                              const EmbeddingProvider& provider,
                                              const FitConfig& cfg, unsigned jobs) {
  if (candidates.empty()) throw InvalidInput("rank_candidates: no candidates");
  check_provider(ctx, provider);
  const ClusterModel model = fit_directory(ctx, cfg, jobs);
  const EmbeddingVector mean = directory_mean(ctx);

  std::vector<CamouflageReport> reports;
  reports.reserve(candidates.size());
  for (const auto& name : candidates) {
    const EmbeddingVector g = provider.embed(name);
    const ClusterScore cs = cluster_score(g, model);
    CamouflageReport r;
    r.candidate = name;
    r.simple_score = cosine_distance(g, mean);
    r.cluster_score = cs.score;
    r.k_star = cs.k_star;
    r.nearest_component = cs.nearest;
    r.cluster_fallback = cs.fallback;
    reports.push_back(std::move(r));
  }

  std::vector<double> simple(reports.size()), cluster(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    simple[i] = reports[i].simple_score;
    cluster[i] = reports[i].cluster_score;
  }
  simple = normalize_per_directory(simple);
  cluster = normalize_per_directory(cluster);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    reports[i].normalized_simple = simple[i];
    reports[i].normalized_cluster = cluster[i];
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const CamouflageReport& a, const CamouflageReport& b) {
                     return a.cluster_score < b.cluster_score;
                   });
  return reports;
}

}  // namespace camo
