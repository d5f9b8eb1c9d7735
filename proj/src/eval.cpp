#include <relief/eval.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace relief::eval {

namespace {

/// Best IoU each gt box reaches against the candidate proposals.
std::vector<double> best_iou_per_gt(std::span<const BoxPx> gt, std::span<const BoxPx> props) {
    std::vector<double> best(gt.size(), 0.0);
    for (std::size_t g = 0; g < gt.size(); ++g) {
        for (const auto& p : props) {
            best[g] = std::max(best[g], iou(gt[g], p));
            if (best[g] >= 1.0) break;
        }
    }
    return best;
}

}  // namespace

Overlap overlap(const BoxPx& a, const BoxPx& b) {
    const std::int64_t iw = std::min(a.x1, b.x1) - std::max(a.x0, b.x0) + 1;
    const std::int64_t ih = std::min(a.y1, b.y1) - std::max(a.y0, b.y0) + 1;
    Overlap o;
    o.intersection = (iw > 0 && ih > 0) ? iw * ih : 0;
    o.union_area = a.area() + b.area() - o.intersection;
    return o;
}

double iou(const BoxPx& a, const BoxPx& b) {
    return overlap(a, b).iou();
}

double recall_at(std::span<const BoxPx> gt, std::span<const BoxPx> props, double threshold) {
    if (gt.empty()) return 1.0;
    const auto best = best_iou_per_gt(gt, props);
    const auto hits = std::count_if(best.begin(), best.end(), [&](double v) { return v >= threshold; });
    return static_cast<double>(hits) / static_cast<double>(gt.size());
}

std::vector<double> iou_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorCode::kInvalidArgument, "IoU grid needs lo <= hi and step > 0");
    }
    std::vector<double> grid;
    const auto n = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
    for (long long i = 0; i <= n; ++i) {
        grid.push_back(std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9);
    }
    return grid;
}

RecallCurve recall_curve(const AnnotationSet& corpus, std::span<const ProposalSet> proposals,
                         std::span<const double> thresholds, std::optional<std::size_t> top_k) {
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw Error(ErrorCode::kInvalidArgument, "thresholds must be ascending");
    }
    std::unordered_map<std::string, const ProposalSet*> by_id;
    for (const auto& set : proposals) by_id.emplace(set.image_id, &set);

    std::string missing;
    std::vector<double> best_all;
    for (const auto& rec : corpus.records) {
        const auto it = by_id.find(rec.image_id);
        if (it == by_id.end()) {
            missing += (missing.empty() ? "" : ", ") + rec.image_id;
            continue;
        }
        std::span<const BoxPx> props = it->second->boxes;
        if (top_k && props.size() > *top_k) props = props.first(*top_k);
        const auto best = best_iou_per_gt(rec.gt_boxes, props);
        best_all.insert(best_all.end(), best.begin(), best.end());
    }
    if (!missing.empty()) {
        throw Error(ErrorCode::kMissingImage, "no proposals for image ids: " + missing);
    }

    RecallCurve curve;
    curve.thresholds.assign(thresholds.begin(), thresholds.end());
    for (double thr : thresholds) {
        if (best_all.empty()) {
            curve.recall.push_back(1.0);
            continue;
        }
        const auto hits = std::count_if(best_all.begin(), best_all.end(), [&](double v) { return v >= thr; });
        curve.recall.push_back(static_cast<double>(hits) / static_cast<double>(best_all.size()));
    }
    return curve;
}

void write_curve_csv(const RecallCurve& curve, std::ostream& out) {
    out << "iou_threshold,recall\n";
    for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
        out << fmt::format("{},{}\n", curve.thresholds[i], curve.recall[i]);
    }
}

}  // namespace relief::eval
