#include <gtest/gtest.h>

#include <algorithm>

#include "camo/error.hpp"
#include "camo/experiment.hpp"
#include "camo/log.hpp"
#include "camo/synthetic.hpp"

using namespace camo;

namespace {

const HashedEmbedder& hashed() {
  static const HashedEmbedder e{NgramConfig{}};
  return e;
}

class Quiet : public ::testing::Test {
 protected:
  ScopedWarningSink sink_{[](std::string_view) {}};
};

using Experiment = Quiet;

}  // namespace

TEST(SizeClass, Boundaries) {
  EXPECT_EQ(classify_size(4), SizeClass::kNone);
  EXPECT_EQ(classify_size(5), SizeClass::kSmall);
  EXPECT_EQ(classify_size(9), SizeClass::kSmall);
  EXPECT_EQ(classify_size(10), SizeClass::kMedium);
  EXPECT_EQ(classify_size(49), SizeClass::kMedium);
  EXPECT_EQ(classify_size(50), SizeClass::kLarge);
  EXPECT_EQ(classify_size(500), SizeClass::kLarge);
  EXPECT_EQ(classify_size(501), SizeClass::kNone);
  EXPECT_STREQ(to_string(SizeClass::kMedium), "medium");
}

TEST(SyntheticCorpus, ShapeAndDeterminism) {
  const auto a = make_themed_corpus(42, 30);
  EXPECT_EQ(a.size(), 30u);
  EXPECT_EQ(filter_repositories(a).size(), 30u);
  const auto b = make_themed_corpus(42, 30);
  EXPECT_EQ(manifest_to_jsonl(a), manifest_to_jsonl(b));
  EXPECT_NE(manifest_to_jsonl(a), manifest_to_jsonl(make_themed_corpus(43, 30)));
  EXPECT_EQ(parse_manifest(manifest_to_jsonl(a)).size(), 30u);
}

TEST_F(Experiment, ThemedCorpusSeparatesLocalAndSampled) {
  const auto corpus = make_themed_corpus(7, 40);
  const auto rep = run_experiment(corpus, hashed(), FitConfig{}, SamplePlan{});
  EXPECT_EQ(rep.skipped_directories, 0u);
  EXPECT_EQ(rep.per_directory.size(), rep.eligible_directories);
  for (const auto* m : {&rep.simple, &rep.cluster}) {
    EXPECT_EQ(m->sampled_median, 1.0);
    EXPECT_LE(m->local_median, 0.5);
    EXPECT_GE(m->ks.statistic, 0.5);
    EXPECT_LT(m->ks.p_value, 0.01);
  }
  std::size_t strata_dirs = 0;
  for (const auto& st : rep.strata) strata_dirs += st.directories;
  EXPECT_EQ(strata_dirs, rep.per_directory.size());
  EXPECT_TRUE(rep.strata[0].simple.has_value());
  EXPECT_EQ(rep.provider_id, hashed().id());

  for (const auto& d : rep.per_directory) {
    EXPECT_EQ(d.locals.size(), d.item_count);  // themed directories hold only files
    EXPECT_EQ(d.sampled.size(), 1u);
    double mx_s = 0, mx_c = 0;
    for (const auto* g : {&d.locals, &d.sampled}) {
      for (const auto& s : *g) {
        mx_s = std::max(mx_s, s.norm_simple);
        mx_c = std::max(mx_c, s.norm_cluster);
        EXPECT_GE(s.simple, 0.0);
        EXPECT_LE(s.simple, 2.0);
      }
    }
    EXPECT_EQ(mx_s, 1.0);
    EXPECT_EQ(mx_c, 1.0);
    EXPECT_NE(d.sampled[0].source_repo, d.repo_id);
  }
}

TEST_F(Experiment, IdenticalRepositoriesShowNoSeparation) {
  const auto corpus = make_uniform_corpus(60, 10);
  SamplePlan plan;
  plan.samples_per_directory = 10;
  const auto rep = run_experiment(corpus, hashed(), FitConfig{}, plan);
  EXPECT_EQ(rep.per_directory.size(), 60u);
  for (const auto* m : {&rep.simple, &rep.cluster}) {
    EXPECT_LT(m->ks.statistic, 0.1);
    EXPECT_GT(m->ks.p_value, 0.01);
  }
  // Every decoy name exists locally, so it carries that local's score.
  for (const auto& d : rep.per_directory) {
    for (const auto& s : d.sampled) {
      const auto it = std::find_if(d.locals.begin(), d.locals.end(),
                                   [&](const ScoredName& l) { return l.name == s.name; });
      ASSERT_NE(it, d.locals.end());
      EXPECT_EQ(it->simple, s.simple);
      EXPECT_EQ(it->cluster, s.cluster);
    }
  }
}

TEST_F(Experiment, DeterministicAcrossRunsAndJobCounts) {
  const auto corpus = make_themed_corpus(11, 16);
  ExperimentOptions serial, threaded;
  threaded.jobs = 4;
  const auto a = run_experiment(corpus, hashed(), FitConfig{}, SamplePlan{}, serial);
  const auto b = run_experiment(corpus, hashed(), FitConfig{}, SamplePlan{}, serial);
  const auto c = run_experiment(corpus, hashed(), FitConfig{}, SamplePlan{}, threaded);
  for (const auto* other : {&b, &c}) {
    EXPECT_EQ(a.local_simple, other->local_simple);
    EXPECT_EQ(a.sampled_cluster, other->sampled_cluster);
    EXPECT_EQ(a.simple.ks.statistic, other->simple.ks.statistic);
    ASSERT_EQ(a.per_directory.size(), other->per_directory.size());
    for (std::size_t i = 0; i < a.per_directory.size(); ++i) {
      EXPECT_EQ(a.per_directory[i].k_star, other->per_directory[i].k_star);
      EXPECT_EQ(a.per_directory[i].dir_path, other->per_directory[i].dir_path);
    }
  }
}

TEST_F(Experiment, DirectoryCapSubsamples) {
  const auto corpus = make_themed_corpus(12, 16);
  ExperimentOptions opts;
  opts.max_directories = 5;
  const auto rep = run_experiment(corpus, hashed(), FitConfig{}, SamplePlan{}, opts);
  EXPECT_EQ(rep.per_directory.size(), 5u);
  EXPECT_GT(rep.eligible_directories, 5u);
  for (std::size_t i = 1; i < rep.per_directory.size(); ++i) {
    const auto& p = rep.per_directory[i - 1];
    const auto& q = rep.per_directory[i];
    EXPECT_LT(std::tie(p.repo_id, p.dir_path), std::tie(q.repo_id, q.dir_path));
  }
  const auto again = run_experiment(corpus, hashed(), FitConfig{}, SamplePlan{}, opts);
  EXPECT_EQ(rep.local_simple, again.local_simple);
}

TEST_F(Experiment, SubdirectoryNamesOptional) {
  std::vector<RepoManifest> repos = {
      {"a", {"d/x1.txt", "d/x2.txt", "d/x3.txt", "d/s1/k", "d/s2/k", "d/s3/k", "e.txt", "f.txt", "g.txt"}},
      {"b", {"z1.md", "z2.md", "z3.md", "z4.md", "z5.md", "z6.md", "z7.md", "z8.md", "z9.md", "z10.md"}}};
  const auto files_only = run_experiment(repos, hashed(), FitConfig{}, SamplePlan{});
  ExperimentOptions opts;
  opts.include_subdirs = true;
  const auto with_dirs = run_experiment(repos, hashed(), FitConfig{}, SamplePlan{}, opts);
  auto locals_of = [](const ExperimentReport& r, const std::string& dir) {
    for (const auto& d : r.per_directory)
      if (d.repo_id == "a" && d.dir_path == dir) return d.locals.size();
    return std::size_t{0};
  };
  EXPECT_EQ(locals_of(files_only, "d"), 3u);
  EXPECT_EQ(locals_of(with_dirs, "d"), 6u);
}

TEST_F(Experiment, Errors) {
  const auto one = make_uniform_corpus(1, 10);
  EXPECT_THROW(run_experiment(one, hashed(), FitConfig{}, SamplePlan{}), InvalidInput);
  const std::vector<RepoManifest> tiny = {{"a", {"x", "y"}}, {"b", {"z", "w"}}};
  EXPECT_THROW(run_experiment(tiny, hashed(), FitConfig{}, SamplePlan{}), InvalidInput);
}
