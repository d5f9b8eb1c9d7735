/**
 * @file pipeline.hpp
 * @brief Proposal generation from one feature stack: integrate, split into
 *        value levels, cluster, map to pixels, rescale, deduplicate.
 */
#pragma once

#include <relief/boxes.hpp>

#include <optional>
#include <string>
#include <vector>

namespace relief::core {

struct PipelineConfig {
    int level_count = 10;
    double alpha = 0.8;
    double beta = 1.5;
    Connectivity connectivity = Connectivity::kEight;
    bool local_search_enabled = true;
    int min_cluster_cells = 1;
    bool dedup_exact = true;

    /// Throws kInvalidArgument unless 0 < alpha < 1 < beta, level_count >= 1
    /// and min_cluster_cells >= 1.
    void validate() const;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Small boxes and the optional big box found in one level.
struct LevelRois {
    int level = 1;
    std::vector<BoxPx> small;
    std::optional<BoxPx> big;
};

struct RoiExtraction {
    std::vector<LevelRois> levels;  ///< ascending level, only levels with >= 1 box
    int degenerate_skipped = 0;     ///< clusters mapped entirely outside the image
};

/// Steps up to the big RoI, before local search and dedup.
RoiExtraction extract_level_rois(const LevelPartition& part, const GeometryMeta& geom,
                                 const PipelineConfig& cfg);

/// Expands level RoIs into the final ordered proposal list.
std::vector<BoxPx> assemble_proposals(const RoiExtraction& rois, const GeometryMeta& geom,
                                      const PipelineConfig& cfg);

/// Keeps the first occurrence of each (x0, y0, x1, y1).
std::vector<BoxPx> dedup_exact(std::span<const BoxPx> boxes);

/**
 * @brief Full generator. Output order: levels ascending; within a level each
 *        small box then the big box, each followed by its four scaled
 *        variants. gen_time_ns covers the whole call.
 */
ProposalSet generate_proposals(const FeatureStack& stack, const PipelineConfig& cfg,
                               std::string image_id = {});

}  // namespace relief::core
