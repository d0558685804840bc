#include "camo/serialize.hpp"

#include <fmt/format.h>

#include <json.hpp>

#include "camo/error.hpp"

namespace camo {

namespace {

using nlohmann::ordered_json;

ordered_json vector_json(const EmbeddingVector& v) {
  ordered_json arr = ordered_json::array();
  for (double x : v.values()) arr.push_back(x);
  return arr;
}

ordered_json mixture_json(const VmfMixture& mix, double ll, std::uint64_t seed) {
  ordered_json j;
  j["dim"] = mix.dim;
  j["k"] = mix.k();
  j["weights"] = mix.weights;
  ordered_json comps = ordered_json::array();
  for (const auto& c : mix.components) {
    ordered_json cj;
    cj["mu"] = vector_json(c.mu);
    cj["kappa"] = c.kappa;
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  j["log_likelihood"] = ll;
  j["seed"] = seed;
  return j;
}

ordered_json ks_json(const KsResult& ks) {
  ordered_json j;
  j["statistic"] = ks.statistic;
  j["p_value"] = ks.p_value;
  j["n1"] = ks.n1;
  j["n2"] = ks.n2;
  return j;
}

ordered_json optional_ks(const std::optional<KsResult>& ks) {
  return ks ? ks_json(*ks) : ordered_json(nullptr);
}

ordered_json scored_json(const ScoredName& s, bool sampled) {
  ordered_json j;
  j["name"] = s.name;
  if (sampled) j["source_repo"] = s.source_repo;
  j["simple"] = s.simple;
  j["cluster"] = s.cluster;
  j["norm_simple"] = s.norm_simple;
  j["norm_cluster"] = s.norm_cluster;
  j["cluster_fallback"] = s.cluster_fallback;
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string mixture_to_json(const VmfMixture& mix, double log_likelihood, std::uint64_t seed) {
  return dump(mixture_json(mix, log_likelihood, seed));
}

std::string model_selection_to_json(const ModelSelection& sel, std::uint64_t seed) {
  ordered_json j;
  j["k_star"] = sel.k_star;
  ordered_json ms = ordered_json::object();
  for (const auto& [k, v] : sel.ms_by_k) ms[std::to_string(k)] = v;
  j["ms_by_k"] = std::move(ms);
  j["all_collapsed"] = sel.all_collapsed;
  j["mixture"] = mixture_json(sel.best.mixture, sel.best.log_likelihood, seed);
  return dump(j);
}

VmfMixture mixture_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto& m = j.contains("mixture") ? j.at("mixture") : j;
    VmfMixture mix;
    mix.dim = m.at("dim").get<std::size_t>();
    mix.weights = m.at("weights").get<std::vector<double>>();
    for (const auto& c : m.at("components")) {
      mix.components.push_back(
          {EmbeddingVector(c.at("mu").get<std::vector<double>>()), c.at("kappa").get<double>()});
    }
    mix.validate();
    return mix;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid mixture dump: ") + e.what(), 1);
  }
}

std::string reports_to_json(const std::string& dir_path,
                            std::span<const CamouflageReport> reports) {
  ordered_json j;
  j["dir_path"] = dir_path;
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json rj;
    rj["candidate"] = r.candidate;
    rj["simple"] = r.simple_score;
    rj["cluster"] = r.cluster_score;
    rj["k_star"] = r.k_star;
    rj["nearest"] = r.nearest_component;
    rj["norm_simple"] = r.normalized_simple;
    rj["norm_cluster"] = r.normalized_cluster;
    rj["cluster_fallback"] = r.cluster_fallback;
    arr.push_back(std::move(rj));
  }
  j["candidates"] = std::move(arr);
  return dump(j);
}

std::string reports_to_csv(const std::string& dir_path,
                           std::span<const CamouflageReport> reports) {
  std::string out = "dir_path,candidate,simple,cluster,k_star,nearest,norm_simple,norm_cluster\n";
  for (const auto& r : reports) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", csv_escape(dir_path),
                       csv_escape(r.candidate), num(r.simple_score), num(r.cluster_score),
                       r.k_star, r.nearest_component, num(r.normalized_simple),
                       num(r.normalized_cluster));
  }
  return out;
}

std::string experiment_to_json(const ExperimentReport& report) {
  ordered_json j;
  ordered_json settings;
  settings["provider_id"] = report.provider_id;
  settings["seed"] = report.seed;
  settings["samples_per_directory"] = report.samples_per_directory;
  j["settings"] = std::move(settings);
  j["eligible_directories"] = report.eligible_directories;
  j["scored_directories"] = report.per_directory.size();
  j["skipped_directories"] = report.skipped_directories;

  auto metric = [](const MetricSummary& m) {
    ordered_json mj;
    mj["local_median"] = m.local_median;
    mj["sampled_median"] = m.sampled_median;
    mj["ks"] = ks_json(m.ks);
    return mj;
  };
  ordered_json agg;
  agg["simple"] = metric(report.simple);
  agg["cluster"] = metric(report.cluster);
  j["aggregate"] = std::move(agg);

  ordered_json strata = ordered_json::array();
  for (const auto& s : report.strata) {
    ordered_json sj;
    sj["size_class"] = to_string(s.size_class);
    sj["directories"] = s.directories;
    sj["simple"] = optional_ks(s.simple);
    sj["cluster"] = optional_ks(s.cluster);
    strata.push_back(std::move(sj));
  }
  j["strata"] = std::move(strata);

  if (report.power_law) {
    ordered_json pj;
    pj["alpha"] = report.power_law->alpha;
    pj["x_min"] = report.power_law->x_min;
    pj["ks_distance"] = report.power_law->ks_distance;
    pj["n_tail"] = report.power_law->n_tail;
    j["power_law"] = std::move(pj);
  } else {
    j["power_law"] = nullptr;
  }

  ordered_json dirs = ordered_json::array();
  for (const auto& d : report.per_directory) {
    ordered_json dj;
    dj["repo_id"] = d.repo_id;
    dj["dir_path"] = d.dir_path;
    dj["item_count"] = d.item_count;
    dj["size_class"] = to_string(d.size_class);
    dj["k_star"] = d.k_star;
    dj["cluster_fallback"] = d.cluster_fallback;
    ordered_json locals = ordered_json::array();
    for (const auto& s : d.locals) locals.push_back(scored_json(s, false));
    ordered_json sampled = ordered_json::array();
    for (const auto& s : d.sampled) sampled.push_back(scored_json(s, true));
    dj["local"] = std::move(locals);
    dj["sampled"] = std::move(sampled);
    dirs.push_back(std::move(dj));
  }
  j["per_directory"] = std::move(dirs);
  return dump(j);
}

std::string experiment_per_directory_csv(const ExperimentReport& report) {
  std::string out =
      "repo_id,dir_path,item_count,size_class,k_star,population,name,source_repo,simple,"
      "cluster,norm_simple,norm_cluster\n";
  for (const auto& d : report.per_directory) {
    const std::string prefix =
        fmt::format("{},{},{},{},{}", csv_escape(d.repo_id), csv_escape(d.dir_path),
                    d.item_count, to_string(d.size_class), d.k_star);
    auto rows = [&](const std::vector<ScoredName>& group, const char* population) {
      for (const auto& s : group) {
        out += fmt::format("{},{},{},{},{},{},{},{}\n", prefix, population, csv_escape(s.name),
                           csv_escape(s.source_repo), num(s.simple), num(s.cluster),
                           num(s.norm_simple), num(s.norm_cluster));
      }
    };
    rows(d.locals, "local");
    rows(d.sampled, "sampled");
  }
  return out;
}

std::string experiment_pooled_csv(const ExperimentReport& report) {
  std::string out = "metric,population,value\n";
  auto rows = [&](const std::vector<double>& values, const char* metric, const char* pop) {
    for (double v : values) out += fmt::format("{},{},{}\n", metric, pop, num(v));
  };
  rows(report.local_simple, "simple", "local");
  rows(report.sampled_simple, "simple", "sampled");
  rows(report.local_cluster, "cluster", "local");
  rows(report.sampled_cluster, "cluster", "sampled");
  return out;
}

std::string records_to_json(std::span<const DirectoryRecord> records) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) {
    ordered_json j;
    j["repo_id"] = r.repo_id;
    j["dir_path"] = r.dir_path;
    j["item_count"] = r.item_count;
    j["items"] = r.item_names;
    j["files"] = r.file_names;
    if (!r.warning.empty()) j["warning"] = r.warning;
    arr.push_back(std::move(j));
  }
  return dump(arr);
}

std::string records_to_csv(std::span<const DirectoryRecord> records) {
  std::string out = "repo_id,dir_path,item_count,file_count,warning\n";
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{},{}\n", csv_escape(r.repo_id), csv_escape(r.dir_path),
                       r.item_count, r.file_names.size(), csv_escape(r.warning));
  }
  return out;
}

std::string histogram_to_csv(std::span<const HistogramBin> bins) {
  std::string out = "bin_low,bin_high,count\n";
  for (const auto& b : bins) out += fmt::format("{},{},{}\n", num(b.low), num(b.high), b.count);
  return out;
}

std::string histogram_to_json(std::span<const HistogramBin> bins) {
  ordered_json arr = ordered_json::array();
  for (const auto& b : bins) {
    ordered_json j;
    j["bin_low"] = b.low;
    j["bin_high"] = b.high;
    j["count"] = b.count;
    arr.push_back(std::move(j));
  }
  return dump(arr);
}

}  // namespace camo
