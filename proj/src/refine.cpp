#include <relief/refine.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace relief::refine {

std::string_view to_string(RegressorKind kind) {
    return kind == RegressorKind::kAffine ? "affine" : "identity";
}

RegressorKind regressor_kind_from_string(std::string_view text) {
    if (text == "identity") return RegressorKind::kIdentity;
    if (text == "affine") return RegressorKind::kAffine;
    throw Error(ErrorCode::kParseError, "unknown regressor kind '" + std::string(text) + "'");
}

void RefineConfig::validate() const {
    if (loops < 0) throw Error(ErrorCode::kInvalidArgument, "loops must be >= 0");
    if (!(convergence_eps >= 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "convergence_eps must be >= 0");
    }
}

BoxPx AffineRegressor::apply(const BoxPx& box, const GeometryMeta& geom) const {
    const double w = box.width();
    const double h = box.height();
    const double cx = box.center_x() + dx_ * w;
    const double cy = box.center_y() + dy_ * h;
    const int new_w = std::max(1, core::round_half_up(w * std::exp(dw_)));
    const int new_h = std::max(1, core::round_half_up(h * std::exp(dh_)));
    // A shift can push the center off-image; pin it to the nearest pixel inside
    // so the clipped result is never empty.
    const double cx_in = std::clamp(cx, 0.0, geom.image_w - 1.0);
    const double cy_in = std::clamp(cy, 0.0, geom.image_h - 1.0);
    return core::centered_box(cx_in, cy_in, new_w, new_h, BoxKind::kRefined, geom);
}

std::unique_ptr<BoxRegressor> make_regressor(const RegressorSpec& spec) {
    if (spec.kind == RegressorKind::kAffine) {
        return std::make_unique<AffineRegressor>(spec.dx, spec.dy, spec.dw, spec.dh);
    }
    return std::make_unique<IdentityRegressor>();
}

BoxPx apply_regressor(const RegressorSpec& spec, const BoxPx& box, const GeometryMeta& geom) {
    return make_regressor(spec)->apply(box, geom);
}

std::vector<BoxPx> recursive_refine(const BoxRegressor& regressor, std::span<const BoxPx> boxes,
                                    const RefineConfig& cfg, const GeometryMeta& geom) {
    cfg.validate();
    std::vector<BoxPx> out;
    out.reserve(boxes.size());
    for (const auto& input : boxes) {
        BoxPx current = input;
        for (int round = 0; round < cfg.loops; ++round) {
            const BoxPx next = regressor.apply(current, geom);
            const bool settled = std::abs(next.x0 - current.x0) < cfg.convergence_eps &&
                                 std::abs(next.y0 - current.y0) < cfg.convergence_eps &&
                                 std::abs(next.x1 - current.x1) < cfg.convergence_eps &&
                                 std::abs(next.y1 - current.y1) < cfg.convergence_eps;
            current = next;
            if (settled) break;
        }
        current.kind = current.same_extent(input) ? input.kind : BoxKind::kRefined;
        out.push_back(current);
    }
    return out;
}

std::vector<BoxPx> recursive_refine(const RegressorSpec& spec, std::span<const BoxPx> boxes,
                                    const RefineConfig& cfg, const GeometryMeta& geom) {
    return recursive_refine(*make_regressor(spec), boxes, cfg, geom);
}

}  // namespace relief::refine
