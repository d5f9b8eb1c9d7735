#include <relief/pipeline.hpp>

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <unordered_set>

namespace relief::core {

void PipelineConfig::validate() const {
    if (level_count < 1) {
        throw Error(ErrorCode::kInvalidArgument, "level_count must be >= 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 1.0) || !std::isfinite(beta)) {
        throw Error(ErrorCode::kInvalidArgument, "need 0 < alpha < 1 < beta");
    }
    if (min_cluster_cells < 1) {
        throw Error(ErrorCode::kInvalidArgument, "min_cluster_cells must be >= 1");
    }
}

RoiExtraction extract_level_rois(const LevelPartition& part, const GeometryMeta& geom,
                                 const PipelineConfig& cfg) {
    RoiExtraction out;
    const auto by_level = extract_all_clusters(part, cfg.connectivity);
    for (std::size_t i = 0; i < by_level.size(); ++i) {
        LevelRois rois;
        rois.level = static_cast<int>(i) + 1;
        for (const auto& cluster : by_level[i]) {
            if (cluster.size() < static_cast<std::size_t>(cfg.min_cluster_cells)) continue;
            try {
                rois.small.push_back(cluster_to_box(cluster, geom));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::kDegenerateBox) throw;
                ++out.degenerate_skipped;
            }
        }
        if (rois.small.empty()) continue;
        rois.big = big_roi(rois.small);
        out.levels.push_back(std::move(rois));
    }
    return out;
}

std::vector<BoxPx> assemble_proposals(const RoiExtraction& rois, const GeometryMeta& geom,
                                      const PipelineConfig& cfg) {
    std::vector<BoxPx> boxes;
    auto emit = [&](const BoxPx& box) {
        boxes.push_back(box);
        if (cfg.local_search_enabled) {
            for (const auto& scaled : local_search(box, cfg.alpha, cfg.beta, geom)) {
                boxes.push_back(scaled);
            }
        }
    };
    for (const auto& level : rois.levels) {
        for (const auto& small : level.small) emit(small);
        if (level.big) emit(*level.big);
    }
    return cfg.dedup_exact ? dedup_exact(boxes) : boxes;
}

std::vector<BoxPx> dedup_exact(std::span<const BoxPx> boxes) {
    struct ExtentHash {
        std::size_t operator()(const BoxPx& b) const noexcept {
            std::size_t h = static_cast<std::size_t>(b.x0);
            for (int v : {b.y0, b.x1, b.y1}) h = h * 1000003u ^ static_cast<std::size_t>(v);
            return h;
        }
    };
    struct ExtentEq {
        bool operator()(const BoxPx& a, const BoxPx& b) const noexcept { return a.same_extent(b); }
    };
    std::unordered_set<BoxPx, ExtentHash, ExtentEq> seen;
    seen.reserve(boxes.size());
    std::vector<BoxPx> out;
    out.reserve(boxes.size());
    for (const auto& b : boxes) {
        if (seen.insert(b).second) out.push_back(b);
    }
    return out;
}

ProposalSet generate_proposals(const FeatureStack& stack, const PipelineConfig& cfg,
                               std::string image_id) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate();

    const IntegrateMap map = build_integrate_map(stack);
    const LevelPartition part = separate_levels(map, cfg.level_count);
    const RoiExtraction rois = extract_level_rois(part, stack.geometry, cfg);

    ProposalSet set;
    set.image_id = std::move(image_id);
    set.boxes = assemble_proposals(rois, stack.geometry, cfg);
    set.gen_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    if (rois.degenerate_skipped > 0) {
        spdlog::debug("{}: skipped {} clusters mapped outside the image", set.image_id,
                      rois.degenerate_skipped);
    }
    return set;
}

}  // namespace relief::core
