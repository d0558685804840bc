#include "camo/experiment.hpp"

#include <algorithm>
#include <numeric>

#include "camo/camouflage.hpp"
#include "camo/error.hpp"
#include "camo/parallel.hpp"
#include "camo/random.hpp"

namespace camo {

SizeClass classify_size(std::size_t item_count) noexcept {
  if (item_count >= 5 && item_count < 10) return SizeClass::kSmall;
  if (item_count >= 10 && item_count < 50) return SizeClass::kMedium;
  if (item_count >= 50 && item_count <= 500) return SizeClass::kLarge;
  return SizeClass::kNone;
}

const char* to_string(SizeClass c) noexcept {
  switch (c) {
    case SizeClass::kSmall: return "small";
    case SizeClass::kMedium: return "medium";
    case SizeClass::kLarge: return "large";
    case SizeClass::kNone: return "none";
  }
  return "none";
}

namespace {

struct Slot {
  std::optional<DirectoryResult> result;
};

DirectoryResult score_directory(const DirectoryRecord& rec,
                                std::span<const RepoManifest> manifests,
                                const EmbeddingProvider& provider, const FitConfig& cfg,
                                const SamplePlan& plan, bool include_subdirs) {
  const auto& names = include_subdirs ? rec.item_names : rec.file_names;
  DirectoryContext ctx(rec.dir_path, names, provider);

  DirectoryResult out;
  out.repo_id = rec.repo_id;
  out.dir_path = rec.dir_path;
  out.item_count = rec.item_count;
  out.size_class = classify_size(rec.item_count);

  for (std::size_t i = 0; i < ctx.size(); ++i) {
    const DirectoryContext rest = ctx.without(ctx.names()[i]);
    const EmbeddingVector& v = ctx.vectors()[i];
    const ClusterScore cs = cluster_score(v, fit_directory(rest, cfg));
    ScoredName s;
    s.name = ctx.names()[i];
    s.simple = simple_score(v, rest);
    s.cluster = cs.score;
    s.cluster_fallback = cs.fallback;
    out.locals.push_back(std::move(s));
  }

  const ClusterModel full = fit_directory(ctx, cfg);
  out.k_star = full.k_star;
  out.cluster_fallback = full.fallback;
  for (auto& draw : sample_cross_repo_detailed(rec, manifests, plan)) {
    ScoredName s;
    const auto same = std::find(names.begin(), names.end(), draw.name);
    if (same != names.end()) {
      // A name already present is scored against the directory without
      // it, which is exactly that local's leave-one-out score.
      s = out.locals[static_cast<std::size_t>(same - names.begin())];
    } else {
      const EmbeddingVector g = provider.embed(draw.name);
      const ClusterScore cs = cluster_score(g, full);
      s.simple = simple_score(g, ctx);
      s.cluster = cs.score;
      s.cluster_fallback = cs.fallback;
    }
    s.name = std::move(draw.name);
    s.source_repo = std::move(draw.repo_id);
    out.sampled.push_back(std::move(s));
  }

  std::vector<double> simple, cluster;
  for (const auto* group : {&out.locals, &out.sampled}) {
    for (const auto& s : *group) {
      simple.push_back(s.simple);
      cluster.push_back(s.cluster);
    }
  }
  simple = normalize_per_directory(simple);
  cluster = normalize_per_directory(cluster);
  std::size_t idx = 0;
  for (auto* group : {&out.locals, &out.sampled}) {
    for (auto& s : *group) {
      s.norm_simple = simple[idx];
      s.norm_cluster = cluster[idx];
      ++idx;
    }
  }
  return out;
}

MetricSummary summarize(const std::vector<double>& local, const std::vector<double>& sampled) {
  MetricSummary m;
  m.local_median = median(local);
  m.sampled_median = median(sampled);
  m.ks = ks_two_sample(local, sampled);
  return m;
}

}  // namespace

ExperimentReport run_experiment(std::span<const RepoManifest> manifests,
                                const EmbeddingProvider& provider, const FitConfig& fit_cfg,
                                const SamplePlan& plan, const ExperimentOptions& options) {
  if (manifests.size() < 2) {
    throw InvalidInput("run_experiment: need at least two repositories for cross-repo sampling");
  }
  fit_cfg.validate();
  std::vector<DirectoryRecord> dirs = enumerate_directories(manifests);

  ExperimentReport report;
  report.provider_id = provider.id();
  report.seed = plan.seed;
  report.samples_per_directory = plan.samples_per_directory;
  report.eligible_directories = dirs.size();

  {
    std::vector<long> sizes;
    sizes.reserve(dirs.size());
    for (const auto& d : dirs) sizes.push_back(static_cast<long>(d.item_count));
    try {
      report.power_law = power_law_fit(sizes);
    } catch (const Error&) {
      report.power_law.reset();
    }
  }

  if (options.max_directories && dirs.size() > *options.max_directories) {
    std::vector<std::size_t> order(dirs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(plan.seed, "directory-subsample"));
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
    }
    order.resize(*options.max_directories);
    std::sort(order.begin(), order.end());
    std::vector<DirectoryRecord> picked;
    picked.reserve(order.size());
    for (std::size_t i : order) picked.push_back(std::move(dirs[i]));
    dirs = std::move(picked);
  }

  std::vector<Slot> slots(dirs.size());
  parallel_for(dirs.size(), options.jobs, [&](std::size_t i) {
    const auto& rec = dirs[i];
    const auto& names = options.include_subdirs ? rec.item_names : rec.file_names;
    if (names.size() < 2) return;
    try {
      slots[i].result =
          score_directory(rec, manifests, provider, fit_cfg, plan, options.include_subdirs);
    } catch (const DegenerateDirectory&) {
    }
  });

  for (auto& slot : slots) {
    if (!slot.result) {
      ++report.skipped_directories;
      continue;
    }
    DirectoryResult& r = *slot.result;
    for (const auto& s : r.locals) {
      report.local_simple.push_back(s.norm_simple);
      report.local_cluster.push_back(s.norm_cluster);
    }
    for (const auto& s : r.sampled) {
      report.sampled_simple.push_back(s.norm_simple);
      report.sampled_cluster.push_back(s.norm_cluster);
    }
    report.per_directory.push_back(std::move(r));
  }
  if (report.per_directory.empty()) {
    throw InvalidInput("run_experiment: no directory could be scored");
  }
  report.simple = summarize(report.local_simple, report.sampled_simple);
  report.cluster = summarize(report.local_cluster, report.sampled_cluster);

  constexpr std::array<SizeClass, 3> classes{SizeClass::kSmall, SizeClass::kMedium,
                                             SizeClass::kLarge};
  for (std::size_t c = 0; c < classes.size(); ++c) {
    StratumResult& st = report.strata[c];
    st.size_class = classes[c];
    std::vector<double> ls, ss, lc, sc;
    for (const auto& r : report.per_directory) {
      if (r.size_class != classes[c]) continue;
      ++st.directories;
      for (const auto& s : r.locals) {
        ls.push_back(s.norm_simple);
        lc.push_back(s.norm_cluster);
      }
      for (const auto& s : r.sampled) {
        ss.push_back(s.norm_simple);
        sc.push_back(s.norm_cluster);
      }
    }
    if (!ls.empty() && !ss.empty()) {
      st.simple = ks_two_sample(ls, ss);
      st.cluster = ks_two_sample(lc, sc);
    }
  }
  return report;
}

}  // namespace camo
