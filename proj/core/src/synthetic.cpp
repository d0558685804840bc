#include "camo/synthetic.hpp"

#include <array>
#include <set>

#include <fmt/format.h>

#include <json.hpp>

#include "camo/random.hpp"

namespace camo {

namespace {

struct Theme {
  std::vector<std::string> stems;
  std::vector<std::string> extensions;
  std::vector<std::string> dirs;
};

const std::vector<Theme>& themes() {
  static const std::vector<Theme> t = {
      {{"data", "dataset", "records", "measurement", "samples"}, {".xls", ".csv"}, {"data", "raw"}},
      {{"photo", "img", "snapshot", "dsc", "picture"}, {".jpg", ".png"}, {"images", "gallery"}},
      {{"parser", "lexer", "tokenizer", "ast_node", "grammar"}, {".cpp", ".hpp"}, {"src", "compiler"}},
      {{"invoice", "receipt", "payment", "billing", "ledger"}, {".pdf", ".docx"}, {"finance", "accounts"}},
      {{"song", "track", "album_mix", "melody", "chorus"}, {".mp3", ".flac"}, {"music", "audio"}},
      {{"test_login", "test_signup", "test_session", "test_token", "test_cookie"}, {".py"}, {"tests", "unit"}},
      {{"chapter", "section", "appendix", "preface", "epilogue"}, {".tex", ".bib"}, {"thesis", "book"}},
      {{"sprite", "tileset", "texture", "shader", "mesh"}, {".glsl", ".obj"}, {"assets", "graphics"}},
      {{"migration", "schema", "seed_users", "rollback", "index_orders"}, {".sql"}, {"db", "migrations"}},
      {{"component", "navbar", "sidebar", "footer", "modal"}, {".jsx", ".css"}, {"ui", "components"}},
      {{"kernel", "driver", "interrupt", "scheduler", "syscall"}, {".c", ".h"}, {"kernel", "arch"}},
      {{"notebook", "analysis", "regression", "forecast", "cluster_eval"}, {".ipynb", ".r"}, {"notebooks", "stats"}},
      {{"config", "settings", "profile", "defaults", "override"}, {".yaml", ".toml"}, {"config", "etc"}},
      {{"lecture", "slides", "homework", "syllabus", "quiz"}, {".pptx", ".odp"}, {"course", "teaching"}},
      {{"recipe", "menu", "grocery", "pantry", "dessert"}, {".md", ".txt"}, {"kitchen", "recipes"}},
      {{"sensor", "telemetry", "gyro", "accel", "barometer"}, {".bin", ".log"}, {"firmware", "logs"}},
      {{"contract", "agreement", "nda", "tenancy", "addendum"}, {".odt", ".rtf"}, {"legal", "contracts"}},
      {{"genome", "sequence", "fastq_read", "variant", "alignment"}, {".fasta", ".vcf"}, {"bio", "genomics"}},
      {{"handler", "router", "middleware", "controller", "endpoint"}, {".go"}, {"server", "api"}},
      {{"map_tile", "terrain", "elevation", "contour", "shapefile"}, {".geojson", ".shp"}, {"gis", "maps"}},
  };
  return t;
}

// Files in one directory follow a house style: a dominant stem and
// extension plus a fixed numbering pattern, with occasional other members
// of the theme mixed in.
struct HouseStyle {
  std::size_t stem = 0;
  std::size_t extension = 0;
  int pattern = 0;
};

std::string themed_name(const Theme& theme, const HouseStyle& style, Rng& rng) {
  const auto& stem = rng.uniform() < 0.8
                         ? theme.stems[style.stem]
                         : theme.stems[static_cast<std::size_t>(rng.below(theme.stems.size()))];
  const auto& ext =
      rng.uniform() < 0.9
          ? theme.extensions[style.extension]
          : theme.extensions[static_cast<std::size_t>(rng.below(theme.extensions.size()))];
  switch (style.pattern) {
    case 0: return fmt::format("{}{}{}", stem, rng.below(100), ext);
    case 1: return fmt::format("{}_{:02}{}", stem, rng.below(100), ext);
    default: return fmt::format("{}_v{}{}", stem, 1 + rng.below(40), ext);
  }
}

}  // namespace

std::vector<RepoManifest> make_themed_corpus(std::uint64_t seed, std::size_t repos) {
  const auto& all = themes();
  std::vector<RepoManifest> out;
  out.reserve(repos);
  for (std::size_t r = 0; r < repos; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    const Theme& theme = all[static_cast<std::size_t>(rng.below(all.size()))];
    RepoManifest repo;
    repo.repo_id = fmt::format("repo{:04}", r);
    const std::size_t dir_count = 2 + static_cast<std::size_t>(rng.below(2));
    for (std::size_t d = 0; d < dir_count; ++d) {
      const std::string dir =
          fmt::format("{}{}", theme.dirs[d % theme.dirs.size()], d < theme.dirs.size() ? "" : "2");
      const std::size_t files = rng.uniform() < 0.7 ? 5 + rng.below(5) : 10 + rng.below(15);
      const HouseStyle style{static_cast<std::size_t>(rng.below(theme.stems.size())),
                             static_cast<std::size_t>(rng.below(theme.extensions.size())),
                             static_cast<int>(rng.below(3))};
      std::set<std::string> names;
      while (names.size() < files) names.insert(themed_name(theme, style, rng));
      for (const auto& n : names) repo.paths.push_back(dir + "/" + n);
    }
    out.push_back(std::move(repo));
  }
  return out;
}

std::vector<RepoManifest> make_uniform_corpus(std::size_t repos, std::size_t files_per_repo) {
  std::vector<RepoManifest> out;
  for (std::size_t r = 0; r < repos; ++r) {
    RepoManifest repo;
    repo.repo_id = fmt::format("uniform{:04}", r);
    for (std::size_t f = 0; f < files_per_repo; ++f) {
      repo.paths.push_back(fmt::format("src/module_{:02}.c", f));
    }
    out.push_back(std::move(repo));
  }
  return out;
}

std::string manifest_to_jsonl(std::span<const RepoManifest> manifests) {
  std::string out;
  for (const auto& m : manifests) {
    nlohmann::ordered_json j;
    j["repo_id"] = m.repo_id;
    j["paths"] = m.paths;
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace camo
