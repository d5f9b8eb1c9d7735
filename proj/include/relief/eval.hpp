/**
 * @file eval.hpp
 * @brief Proposal quality measures: pixel-count IoU, recall at a threshold and
 *        corpus-level recall-to-IoU curves.
 *
 * Boxes use inclusive integer corners, so a box covers
 * (x1 - x0 + 1) * (y1 - y0 + 1) pixels.
 */
#pragma once

#include <relief/types.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace relief::eval {

/// Pixel counts behind an IoU value; keeps the ratio exact.
struct Overlap {
    std::int64_t intersection = 0;
    std::int64_t union_area = 0;

    double iou() const noexcept {
        return union_area == 0 ? 0.0
                               : static_cast<double>(intersection) / static_cast<double>(union_area);
    }
};

Overlap overlap(const BoxPx& a, const BoxPx& b);
double iou(const BoxPx& a, const BoxPx& b);

/// Fraction of gt boxes with at least one proposal at IoU >= threshold.
/// Empty gt gives 1.0.
double recall_at(std::span<const BoxPx> gt, std::span<const BoxPx> props, double threshold);

struct RecallCurve {
    std::vector<double> thresholds;
    std::vector<double> recall;
};

/// lo, lo+step, ..., hi (inclusive when hi is on the grid). Values are
/// rounded to 1e-9 so 0.5:1.0:0.05 yields exactly 11 clean points.
std::vector<double> iou_grid(double lo, double hi, double step);

/**
 * @brief Micro-averaged recall over every gt box in the corpus.
 *
 * When `top_k` is set only the first top_k proposals of each image (in
 * generator order) are considered. Every annotated image needs a proposal
 * set; otherwise kMissingImage is thrown listing all missing ids.
 */
RecallCurve recall_curve(const AnnotationSet& corpus, std::span<const ProposalSet> proposals,
                         std::span<const double> thresholds,
                         std::optional<std::size_t> top_k = std::nullopt);

/// `iou_threshold,recall` header then one row per threshold.
void write_curve_csv(const RecallCurve& curve, std::ostream& out);

}  // namespace relief::eval
