#include "camo/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>
#include <tuple>
#include <unordered_set>

#include <json.hpp>

#include "camo/error.hpp"
#include "camo/random.hpp"

namespace camo {

namespace {

using nlohmann::json;

struct DirNode {
  std::set<std::string> files;
  std::set<std::string> subdirs;
};

// dir_path ("." for root) -> children.
std::map<std::string, DirNode> build_tree(const RepoManifest& repo) {
  std::map<std::string, DirNode> tree;
  tree["."];
  for (const auto& path : repo.paths) {
    std::string parent = ".";
    std::size_t start = 0;
    for (;;) {
      const std::size_t slash = path.find('/', start);
      const std::string segment = path.substr(start, slash - start);
      if (slash == std::string::npos) {
        tree[parent].files.insert(segment);
        break;
      }
      tree[parent].subdirs.insert(segment);
      parent = path.substr(0, slash);
      tree[parent];
      start = slash + 1;
    }
  }
  return tree;
}

std::string validate_path(const json& value, std::size_t line) {
  if (!value.is_string()) throw ParseError("paths must be strings", line);
  std::string p = value.get<std::string>();
  if (p.empty()) throw ParseError("empty path", line);
  if (p.front() == '/') throw ParseError("path has a leading slash: " + p, line);
  if (p.back() == '/') throw ParseError("path has a trailing slash: " + p, line);
  if (p.find("//") != std::string::npos) throw ParseError("path has an empty segment: " + p, line);
  for (std::size_t start = 0; start <= p.size();) {
    const auto slash = std::min(p.find('/', start), p.size());
    const std::string_view seg(p.data() + start, slash - start);
    if (seg == "." || seg == "..") throw ParseError("path has a dot segment: " + p, line);
    start = slash + 1;
  }
  return p;
}

std::string basename_of(const std::string& path) {
  const auto slash = path.rfind('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

}  // namespace

std::vector<RepoManifest> parse_manifest(std::string_view text) {
  std::vector<RepoManifest> out;
  std::unordered_set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object()) throw ParseError("expected a JSON object", line_no);
    const auto id_it = obj.find("repo_id");
    if (id_it == obj.end() || !id_it->is_string()) {
      throw ParseError("missing string field \"repo_id\"", line_no);
    }
    const auto paths_it = obj.find("paths");
    if (paths_it == obj.end() || !paths_it->is_array()) {
      throw ParseError("missing array field \"paths\"", line_no);
    }
    RepoManifest repo;
    repo.repo_id = id_it->get<std::string>();
    if (repo.repo_id.empty()) throw ParseError("empty repo_id", line_no);
    std::unordered_set<std::string> seen;
    for (const auto& p : *paths_it) {
      std::string path = validate_path(p, line_no);
      if (!seen.insert(path).second) throw ParseError("duplicate path: " + path, line_no);
      repo.paths.push_back(std::move(path));
    }
    if (repo.paths.empty()) throw ParseError("repository has no paths", line_no);
    if (!ids.insert(repo.repo_id).second) {
      throw DuplicateError("line " + std::to_string(line_no) + ": duplicate repo_id '" +
                           repo.repo_id + "'");
    }
    out.push_back(std::move(repo));
  }
  return out;
}

std::vector<RepoManifest> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open manifest: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

std::size_t repository_item_count(const RepoManifest& repo) {
  std::set<std::string> dirs;
  for (const auto& p : repo.paths) {
    for (std::size_t slash = p.find('/'); slash != std::string::npos;
         slash = p.find('/', slash + 1)) {
      dirs.insert(p.substr(0, slash));
    }
  }
  return repo.paths.size() + dirs.size();
}

std::vector<RepoManifest> filter_repositories(std::span<const RepoManifest> manifests) {
  std::vector<RepoManifest> out;
  for (const auto& m : manifests) {
    const std::size_t items = repository_item_count(m);
    if (items >= kMinRepoItems && items <= kMaxRepoItems) out.push_back(m);
  }
  return out;
}

std::vector<DirectoryRecord> enumerate_directories(std::span<const RepoManifest> manifests,
                                                   std::size_t min_items) {
  std::vector<DirectoryRecord> out;
  for (const auto& repo : manifests) {
    for (const auto& [dir, node] : build_tree(repo)) {
      std::set<std::string> items(node.files.begin(), node.files.end());
      items.insert(node.subdirs.begin(), node.subdirs.end());
      if (items.size() < min_items) continue;
      DirectoryRecord r;
      r.repo_id = repo.repo_id;
      r.dir_path = dir;
      r.item_names.assign(items.begin(), items.end());
      r.file_names.assign(node.files.begin(), node.files.end());
      r.item_count = r.item_names.size();
      out.push_back(std::move(r));
    }
  }
  std::sort(out.begin(), out.end(), [](const DirectoryRecord& a, const DirectoryRecord& b) {
    return std::tie(a.repo_id, a.dir_path) < std::tie(b.repo_id, b.dir_path);
  });
  return out;
}

std::vector<SampledName> sample_cross_repo_detailed(const DirectoryRecord& target,
                                                    std::span<const RepoManifest> manifests,
                                                    const SamplePlan& plan) {
  if (plan.samples_per_directory < 1) {
    throw InvalidInput("sample_cross_repo: samples_per_directory must be >= 1");
  }
  std::vector<const RepoManifest*> others;
  for (const auto& m : manifests) {
    if (m.repo_id != target.repo_id && !m.paths.empty()) others.push_back(&m);
  }
  if (others.empty()) {
    throw InvalidInput("sample_cross_repo: no repository other than '" + target.repo_id + "'");
  }
  std::string key = target.repo_id;
  key.push_back('\0');
  key += target.dir_path;
  Rng rng(derive_seed(plan.seed, key));
  std::vector<SampledName> out;
  out.reserve(static_cast<std::size_t>(plan.samples_per_directory));
  for (int s = 0; s < plan.samples_per_directory; ++s) {
    const RepoManifest& repo = *others[static_cast<std::size_t>(rng.below(others.size()))];
    const std::string& path = repo.paths[static_cast<std::size_t>(rng.below(repo.paths.size()))];
    out.push_back({basename_of(path), repo.repo_id});
  }
  return out;
}

std::vector<std::string> sample_cross_repo(const DirectoryRecord& target,
                                           std::span<const RepoManifest> manifests,
                                           const SamplePlan& plan) {
  std::vector<std::string> names;
  for (auto& s : sample_cross_repo_detailed(target, manifests, plan)) {
    names.push_back(std::move(s.name));
  }
  return names;
}

namespace {

void scan_into(const std::filesystem::path& root, const std::filesystem::path& dir,
               const std::string& rel, int depth, const ScanOptions& opts,
               std::vector<DirectoryRecord>& out) {
  namespace fs = std::filesystem;
  DirectoryRecord rec;
  rec.repo_id = root.string();
  rec.dir_path = rel;

  std::error_code ec;
  fs::directory_iterator it(dir, fs::directory_options::none, ec);
  if (ec) {
    rec.warning = "cannot read directory: " + ec.message();
    out.push_back(std::move(rec));
    return;
  }
  std::vector<std::pair<std::string, fs::path>> subdirs;
  std::set<std::string> items;
  std::set<std::string> files;
  for (const fs::directory_iterator end; it != end; it.increment(ec)) {
    if (ec) {
      rec.warning = "error while reading directory: " + ec.message();
      break;
    }
    const std::string name = it->path().filename().string();
    if (!opts.include_hidden && !name.empty() && name.front() == '.') continue;
    items.insert(name);
    std::error_code sec;
    const auto status = it->symlink_status(sec);
    if (!sec && fs::is_directory(status)) {
      subdirs.emplace_back(name, it->path());
    } else {
      files.insert(name);  // regular files, symlinks and other entries
    }
  }
  rec.item_names.assign(items.begin(), items.end());
  rec.file_names.assign(files.begin(), files.end());
  rec.item_count = rec.item_names.size();
  out.push_back(std::move(rec));

  if (opts.max_depth && depth >= *opts.max_depth) return;
  std::sort(subdirs.begin(), subdirs.end());
  for (const auto& [name, path] : subdirs) {
    scan_into(root, path, rel == "." ? name : rel + "/" + name, depth + 1, opts, out);
  }
}

}  // namespace

std::vector<DirectoryRecord> scan_filesystem(const std::filesystem::path& root,
                                             const ScanOptions& options) {
  std::error_code ec;
  if (!std::filesystem::is_directory(root, ec)) {
    throw InvalidInput("not a readable directory: " + root.string());
  }
  std::vector<DirectoryRecord> out;
  scan_into(root, root, ".", 0, options, out);
  std::sort(out.begin(), out.end(), [](const DirectoryRecord& a, const DirectoryRecord& b) {
    return a.dir_path < b.dir_path;
  });
  return out;
}

}  // namespace camo
