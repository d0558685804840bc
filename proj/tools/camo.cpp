// camo: score honeyfile names against a directory, fit its cluster
// structure, and run the local-versus-sampled evaluation over a corpus.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "camo/camouflage.hpp"
#include "camo/corpus.hpp"
#include "camo/embedding.hpp"
#include "camo/error.hpp"
#include "camo/experiment.hpp"
#include "camo/model_selection.hpp"
#include "camo/serialize.hpp"
#include "camo/stats.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;

struct Settings {
  std::uint64_t seed = 42;
  unsigned jobs = 1;

  camo::NgramConfig ngram;
  std::string vec_file;

  int k_min = camo::kClusterKMin;
  int k_max = camo::kClusterKMax;
  camo::FitConfig fit;

  std::string format = "json";
  std::string output;

  std::string dir;
  std::string manifest;
  std::string root;
  std::string repo;
  std::string dir_path;

  std::vector<std::string> candidates;
  bool include_subdirs = false;
  bool no_hidden = false;
  std::optional<int> max_depth;
  std::optional<std::size_t> max_directories;
  int samples_per_directory = 1;
  std::size_t min_items = 0;
  int bins = 20;
};

void add_common(CLI::App* cmd, Settings& s) {
  cmd->add_option("--seed", s.seed, "Random seed")->envname("CAMO_SEED")->capture_default_str();
  cmd->add_option("--jobs", s.jobs, "Worker threads")->envname("CAMO_JOBS")
      ->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

void add_embedding(CLI::App* cmd, Settings& s) {
  cmd->add_option("--min-n", s.ngram.min_n, "Shortest character n-gram")->capture_default_str();
  cmd->add_option("--max-n", s.ngram.max_n, "Longest character n-gram")->capture_default_str();
  cmd->add_option("--dim", s.ngram.dim, "Embedding dimension")->capture_default_str();
  cmd->add_option("--buckets", s.ngram.bucket_count, "Hash buckets")->capture_default_str();
  cmd->add_option("--vec-file", s.vec_file, "Pretrained vectors in text .vec format")
      ->check(CLI::ExistingFile);
}

void add_fit(CLI::App* cmd, Settings& s) {
  cmd->add_option("--restarts", s.fit.restarts, "EM restarts per order")->capture_default_str();
  cmd->add_option("--max-iters", s.fit.max_iters, "EM iteration cap")->capture_default_str();
  cmd->add_option("--tol", s.fit.tol, "Relative log-likelihood tolerance")
      ->capture_default_str();
}

// Reads the dimension from a .vec header so --dim need not repeat it.
int vec_file_dim(const std::string& path) {
  std::ifstream in(path);
  std::size_t rows = 0;
  int dim = 0;
  if (!(in >> rows >> dim) || dim < 2) {
    throw camo::ParseError("invalid vector file header in " + path, 1);
  }
  return dim;
}

std::unique_ptr<camo::EmbeddingProvider> make_provider(Settings& s, bool dim_given) {
  if (s.vec_file.empty()) return std::make_unique<camo::HashedEmbedder>(s.ngram);
  if (!dim_given) s.ngram.dim = vec_file_dim(s.vec_file);
  return camo::load_text_vectors(s.vec_file, s.ngram);
}

void emit(const Settings& s, const std::string& text) {
  if (s.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(s.output, std::ios::binary);
  if (!out) throw camo::InvalidInput("cannot write " + s.output);
  out << text;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw camo::InvalidInput("cannot write " + path.string());
  out << text;
}

std::vector<camo::RepoManifest> load_filtered(const std::string& path) {
  auto all = camo::load_manifest(path);
  auto kept = camo::filter_repositories(all);
  if (kept.size() != all.size()) {
    std::cerr << fmt::format("kept {} of {} repositories with 10-500 items\n", kept.size(),
                             all.size());
  }
  return kept;
}

// Directory names for score/fit: either a live directory or one record of
// a manifest.
struct NamedDirectory {
  std::string path;
  std::vector<std::string> names;
};

NamedDirectory resolve_directory(const Settings& s) {
  const bool live = !s.dir.empty();
  const bool from_manifest = !s.manifest.empty();
  if (live == from_manifest) {
    throw camo::InvalidInput("give exactly one of --dir or --manifest");
  }
  if (live) {
    if (!fs::is_directory(s.dir)) throw camo::InvalidInput("not a directory: " + s.dir);
    camo::ScanOptions opts;
    opts.include_hidden = !s.no_hidden;
    opts.max_depth = 0;
    const auto recs = camo::scan_filesystem(s.dir, opts);
    const auto& root = recs.front();
    if (!root.warning.empty()) throw camo::InvalidInput(root.warning);
    return {s.dir, s.include_subdirs ? root.item_names : root.file_names};
  }
  if (s.repo.empty()) throw camo::InvalidInput("--manifest needs --repo");
  const auto manifests = camo::load_manifest(s.manifest);
  const std::string want = s.dir_path.empty() ? "." : s.dir_path;
  for (const auto& rec : camo::enumerate_directories(manifests, 0)) {
    if (rec.repo_id == s.repo && rec.dir_path == want) {
      return {want, s.include_subdirs ? rec.item_names : rec.file_names};
    }
  }
  throw camo::InvalidInput("no directory '" + want + "' in repository '" + s.repo + "'");
}

camo::FitConfig fit_config(const Settings& s) {
  camo::FitConfig cfg = s.fit;
  cfg.seed = s.seed;
  cfg.validate();
  return cfg;
}

// --- subcommands -----------------------------------------------------------

int cmd_score(Settings& s, bool dim_given) {
  if (s.candidates.empty()) throw camo::InvalidInput("no candidate names given");
  const auto provider = make_provider(s, dim_given);
  const auto dir = resolve_directory(s);
  if (dir.names.empty()) throw camo::InvalidInput("directory has no files: " + dir.path);
  const camo::DirectoryContext ctx(dir.path, dir.names, *provider);
  const auto reports = camo::rank_candidates(s.candidates, ctx, *provider, fit_config(s), s.jobs);
  emit(s, s.format == "csv" ? camo::reports_to_csv(dir.path, reports)
                            : camo::reports_to_json(dir.path, reports));
  return kExitOk;
}

int cmd_fit(Settings& s, bool dim_given) {
  const auto provider = make_provider(s, dim_given);
  const auto dir = resolve_directory(s);
  if (dir.names.size() < camo::kMinClusterItems) {
    throw camo::DegenerateDirectory(fmt::format("fit needs at least {} files, {} has {}",
                                                camo::kMinClusterItems, dir.path,
                                                dir.names.size()));
  }
  if (s.k_min < 2 || s.k_max < s.k_min) {
    throw camo::InvalidInput("need 2 <= --k-min <= --k-max");
  }
  const camo::DirectoryContext ctx(dir.path, dir.names, *provider);
  const auto sel = camo::select_k(ctx.vectors(), s.k_min, s.k_max, fit_config(s), s.jobs);
  if (s.format == "csv") {
    std::string out = "k,ms\n";
    for (const auto& [k, ms] : sel.ms_by_k) out += fmt::format("{},{}\n", k, ms);
    emit(s, out);
  } else {
    emit(s, camo::model_selection_to_json(sel, s.seed));
  }
  return kExitOk;
}

int cmd_evaluate(Settings& s, bool dim_given) {
  const auto provider = make_provider(s, dim_given);
  const auto manifests = load_filtered(s.manifest);
  camo::SamplePlan plan;
  plan.seed = s.seed;
  plan.samples_per_directory = s.samples_per_directory;
  if (plan.samples_per_directory < 1) throw camo::InvalidInput("--samples-per-directory must be >= 1");
  camo::ExperimentOptions opts;
  opts.jobs = s.jobs;
  opts.max_directories = s.max_directories;
  opts.include_subdirs = s.include_subdirs;

  const auto report = camo::run_experiment(manifests, *provider, fit_config(s), plan, opts);

  const fs::path out_dir = s.output.empty() ? fs::path("camo-eval") : fs::path(s.output);
  fs::create_directories(out_dir);
  write_file(out_dir / "report.json", camo::experiment_to_json(report));
  write_file(out_dir / "per_directory.csv", camo::experiment_per_directory_csv(report));
  write_file(out_dir / "pooled.csv", camo::experiment_pooled_csv(report));

  std::cout << fmt::format("directories: {} scored, {} eligible, {} skipped\n",
                           report.per_directory.size(), report.eligible_directories,
                           report.skipped_directories);
  auto line = [](const char* name, const camo::MetricSummary& m) {
    return fmt::format("{:<8} local median {:.4f}  sampled median {:.4f}  KS {:.4f}  p {:.3g}\n",
                       name, m.local_median, m.sampled_median, m.ks.statistic, m.ks.p_value);
  };
  std::cout << line("simple", report.simple) << line("cluster", report.cluster);
  for (const auto& st : report.strata) {
    if (!st.simple) continue;
    std::cout << fmt::format("{:<8} {} dirs  KS simple {:.4f}  KS cluster {:.4f}\n",
                             camo::to_string(st.size_class), st.directories, st.simple->statistic,
                             st.cluster->statistic);
  }
  if (report.power_law) {
    std::cout << fmt::format("power law: alpha {:.3f}, x_min {}\n", report.power_law->alpha,
                             report.power_law->x_min);
  }
  std::cout << "wrote " << (out_dir / "report.json").string() << '\n';
  return kExitOk;
}

std::vector<camo::DirectoryRecord> collect_records(const Settings& s) {
  if (s.manifest.empty() == s.root.empty()) {
    throw camo::InvalidInput("give exactly one of --manifest or --root");
  }
  if (!s.manifest.empty()) {
    return camo::enumerate_directories(load_filtered(s.manifest), s.min_items);
  }
  if (!fs::is_directory(s.root)) throw camo::InvalidInput("not a directory: " + s.root);
  camo::ScanOptions opts;
  opts.include_hidden = !s.no_hidden;
  opts.max_depth = s.max_depth;
  auto recs = camo::scan_filesystem(s.root, opts);
  std::erase_if(recs, [&](const camo::DirectoryRecord& r) {
    return r.item_count < s.min_items && r.warning.empty();
  });
  for (const auto& r : recs) {
    if (!r.warning.empty()) std::cerr << "warning: " << r.dir_path << ": " << r.warning << '\n';
  }
  return recs;
}

int cmd_scan(Settings& s) {
  const auto recs = collect_records(s);
  emit(s, s.format == "csv" ? camo::records_to_csv(recs) : camo::records_to_json(recs));
  return kExitOk;
}

int cmd_histogram(Settings& s) {
  const auto recs = collect_records(s);
  std::vector<long> counts;
  for (const auto& r : recs)
    if (r.item_count >= s.min_items) counts.push_back(static_cast<long>(r.item_count));
  if (counts.empty()) throw camo::InvalidInput("no directories to histogram");
  const auto bins = camo::log_histogram(counts, s.bins);
  emit(s, s.format == "csv" ? camo::histogram_to_csv(bins) : camo::histogram_to_json(bins));
  try {
    const auto fit = camo::power_law_fit(counts);
    std::cerr << fmt::format("power law: alpha {:.3f}, x_min {}, KS {:.4f}\n", fit.alpha,
                             fit.x_min, fit.ks_distance);
  } catch (const camo::Error& e) {
    std::cerr << "power law: not fitted (" << e.what() << ")\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  s.jobs = std::max(1u, std::thread::hardware_concurrency());

  CLI::App app{"Honeyfile name camouflage scoring and evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "camo 0.1.0");

  auto* score = app.add_subcommand("score", "Rank candidate names against a directory");
  add_common(score, s);
  add_embedding(score, s);
  add_fit(score, s);
  score->add_option("--dir", s.dir, "Directory to score against");
  score->add_option("--manifest", s.manifest, "Take the directory from a manifest instead");
  score->add_option("--repo", s.repo, "Repository id (with --manifest)");
  score->add_option("--dir-path", s.dir_path, "Directory within the repository (default: root)");
  score->add_option("--output", s.output, "Write to this file instead of stdout");
  score->add_flag("--include-subdirs", s.include_subdirs, "Count subdirectory names as items");
  score->add_flag("--no-hidden", s.no_hidden, "Skip dot-files");
  score->add_option("candidates", s.candidates, "Candidate honeyfile names");

  auto* fit = app.add_subcommand("fit", "Select the mixture order for a directory and dump it");
  add_common(fit, s);
  add_embedding(fit, s);
  add_fit(fit, s);
  fit->add_option("--dir", s.dir, "Directory to fit");
  fit->add_option("--manifest", s.manifest, "Take the directory from a manifest instead");
  fit->add_option("--repo", s.repo, "Repository id (with --manifest)");
  fit->add_option("--dir-path", s.dir_path, "Directory within the repository (default: root)");
  fit->add_option("--output", s.output, "Write to this file instead of stdout");
  fit->add_flag("--include-subdirs", s.include_subdirs, "Count subdirectory names as items");
  fit->add_flag("--no-hidden", s.no_hidden, "Skip dot-files");
  fit->add_option("--k-min", s.k_min, "Smallest mixture order")->capture_default_str();
  fit->add_option("--k-max", s.k_max, "Largest mixture order")->capture_default_str();

  auto* evaluate = app.add_subcommand("evaluate", "Local-versus-sampled evaluation of a corpus");
  add_common(evaluate, s);
  add_embedding(evaluate, s);
  add_fit(evaluate, s);
  evaluate->add_option("--manifest", s.manifest, "JSON-Lines repository manifest")->required();
  evaluate->add_option("--output", s.output, "Directory for report.json and CSVs (default camo-eval)");
  evaluate->add_option("--max-directories", s.max_directories, "Score a seeded subsample");
  evaluate->add_option("--samples-per-directory", s.samples_per_directory,
                       "Decoys drawn per directory")->capture_default_str();
  evaluate->add_flag("--include-subdirs", s.include_subdirs, "Score subdirectory names too");

  auto* scan = app.add_subcommand("scan", "List directories and their item counts");
  add_common(scan, s);
  scan->add_option("--manifest", s.manifest, "JSON-Lines repository manifest");
  scan->add_option("--root", s.root, "Live directory tree to walk");
  scan->add_option("--output", s.output, "Write to this file instead of stdout");
  scan->add_option("--max-depth", s.max_depth, "Descend at most this many levels");
  scan->add_option("--min-items", s.min_items, "Drop directories with fewer items")
      ->capture_default_str();
  scan->add_flag("--no-hidden", s.no_hidden, "Skip dot-files");

  auto* histogram = app.add_subcommand("histogram", "Histogram of items per directory");
  add_common(histogram, s);
  histogram->add_option("--manifest", s.manifest, "JSON-Lines repository manifest");
  histogram->add_option("--root", s.root, "Live directory tree to walk");
  histogram->add_option("--output", s.output, "Write to this file instead of stdout");
  histogram->add_option("--bins", s.bins, "Number of equal-width bins")->capture_default_str();
  histogram->add_option("--max-depth", s.max_depth, "Descend at most this many levels");
  histogram->add_flag("--no-hidden", s.no_hidden, "Skip dot-files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (histogram->parsed()) s.min_items = camo::kMinDirectoryItems;
    if (score->parsed()) return cmd_score(s, score->count("--dim") > 0);
    if (fit->parsed()) return cmd_fit(s, fit->count("--dim") > 0);
    if (evaluate->parsed()) return cmd_evaluate(s, evaluate->count("--dim") > 0);
    if (scan->parsed()) return cmd_scan(s);
    if (histogram->parsed()) return cmd_histogram(s);
  } catch (const camo::Error& e) {
    std::cerr << "camo: " << e.what() << '\n';
    return e.is_degenerate() ? kExitDegenerate : kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "camo: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
