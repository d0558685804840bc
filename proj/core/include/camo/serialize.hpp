#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "camo/camouflage.hpp"
#include "camo/corpus.hpp"
#include "camo/experiment.hpp"
#include "camo/model_selection.hpp"
#include "camo/stats.hpp"
#include "camo/vmf.hpp"

// Text serializations used by the CLI. JSON output is pretty-printed with
// two-space indentation; CSV follows RFC 4180 quoting and ends every row
// with '\n'. Numbers are written in shortest round-trip form, so equal
// values always serialize to equal bytes.
namespace camo {

/// {dim, k, weights[], components[{mu[], kappa}], log_likelihood, seed}
std::string mixture_to_json(const VmfMixture& mix, double log_likelihood, std::uint64_t seed);

/// {k_star, ms_by_k{k: ms}, mixture{...}} for `camo fit`.
std::string model_selection_to_json(const ModelSelection& sel, std::uint64_t seed);

/// Parses a mixture dump written by mixture_to_json. Throws ParseError.
VmfMixture mixture_from_json(const std::string& text);

std::string reports_to_json(const std::string& dir_path,
                            std::span<const CamouflageReport> reports);
/// Columns: dir_path,candidate,simple,cluster,k_star,nearest,norm_simple,norm_cluster
std::string reports_to_csv(const std::string& dir_path, std::span<const CamouflageReport> reports);

std::string experiment_to_json(const ExperimentReport& report);
/// One row per scored name: repo_id,dir_path,item_count,size_class,k_star,
/// population,name,source_repo,simple,cluster,norm_simple,norm_cluster
std::string experiment_per_directory_csv(const ExperimentReport& report);
/// Columns: metric,population,value
std::string experiment_pooled_csv(const ExperimentReport& report);

std::string records_to_json(std::span<const DirectoryRecord> records);
/// Columns: repo_id,dir_path,item_count,file_count,warning
std::string records_to_csv(std::span<const DirectoryRecord> records);

/// Columns: bin_low,bin_high,count
std::string histogram_to_csv(std::span<const HistogramBin> bins);
std::string histogram_to_json(std::span<const HistogramBin> bins);

std::string csv_escape(const std::string& field);

}  // namespace camo
