/**
 * @file run_config.hpp
 * @brief Effective configuration of one CLI run, loadable from a JSON file.
 *
 * Recognized keys (all optional):
 *   levels, alpha, beta, connectivity, local_search, min_cluster_cells, dedup,
 *   loops, convergence_eps,
 *   regressor: {kind, dx, dy, dw, dh},
 *   features (string or list), out, proposals, annotations,
 *   iou_grid ("lo:hi:step"), top_k, jobs, repeats
 *
 * Any other key is rejected.
 */
#pragma once

#include <relief/pipeline.hpp>
#include <relief/refine.hpp>

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace relief::cli {

struct RunConfig {
    core::PipelineConfig pipeline;
    refine::RefineConfig refine;
    refine::RegressorSpec regressor;

    std::vector<std::string> features;
    std::string out;
    std::string proposals;
    std::string annotations;
    std::string iou_grid = "0.5:1.0:0.05";
    std::optional<std::size_t> top_k;
    int jobs = 1;
    int repeats = 5;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws kParseError naming the offending key.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});
nlohmann::ordered_json run_config_to_json(const RunConfig& cfg);

RunConfig load_run_config(const std::filesystem::path& path);
void save_run_config(const RunConfig& cfg, const std::filesystem::path& path);

struct GridSpec {
    double lo = 0.5;
    double hi = 1.0;
    double step = 0.05;
};

/// Parses "lo:hi:step".
GridSpec parse_grid(const std::string& text);

}  // namespace relief::cli
