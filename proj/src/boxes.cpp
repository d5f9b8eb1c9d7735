#include <relief/boxes.hpp>

#include <algorithm>
#include <cmath>

namespace relief::core {

int round_half_up(double x) {
    return static_cast<int>(std::floor(x + 0.5));
}

BoxPx clip_to_image(BoxPx box, const GeometryMeta& geom) {
    if (box.x1 < 0 || box.y1 < 0 || box.x0 > geom.image_w - 1 || box.y0 > geom.image_h - 1 ||
        box.x0 > box.x1 || box.y0 > box.y1) {
        throw Error(ErrorCode::kDegenerateBox, "box lies outside the image");
    }
    box.x0 = std::max(box.x0, 0);
    box.y0 = std::max(box.y0, 0);
    box.x1 = std::min(box.x1, geom.image_w - 1);
    box.y1 = std::min(box.y1, geom.image_h - 1);
    return box;
}

BoxPx centered_box(double cx, double cy, int width, int height, BoxKind kind,
                   const GeometryMeta& geom) {
    BoxPx box;
    box.x0 = round_half_up(cx - (width - 1) / 2.0);
    box.y0 = round_half_up(cy - (height - 1) / 2.0);
    box.x1 = box.x0 + width - 1;
    box.y1 = box.y0 + height - 1;
    box.kind = kind;
    return clip_to_image(box, geom);
}

BoxPx cell_bounds_to_box(const CellBounds& bounds, const GeometryMeta& geom) {
    BoxPx box;
    box.x0 = round_half_up(geom.offset_x + bounds.col_min * geom.stride_x);
    box.y0 = round_half_up(geom.offset_y + bounds.row_min * geom.stride_y);
    box.x1 = std::max(box.x0, round_half_up(geom.offset_x + (bounds.col_max + 1) * geom.stride_x) - 1);
    box.y1 = std::max(box.y0, round_half_up(geom.offset_y + (bounds.row_max + 1) * geom.stride_y) - 1);
    box.kind = BoxKind::kSmall;
    return clip_to_image(box, geom);
}

BoxPx cluster_to_box(const Cluster& cluster, const GeometryMeta& geom) {
    return cell_bounds_to_box(cluster.bounds, geom);
}

BoxPx big_roi(std::span<const BoxPx> small_boxes) {
    if (small_boxes.empty()) {
        throw Error(ErrorCode::kEmptyLevel, "big RoI needs at least one small box");
    }
    BoxPx big = small_boxes.front();
    for (const auto& b : small_boxes.subspan(1)) {
        big.x0 = std::min(big.x0, b.x0);
        big.y0 = std::min(big.y0, b.y0);
        big.x1 = std::max(big.x1, b.x1);
        big.y1 = std::max(big.y1, b.y1);
    }
    big.kind = BoxKind::kBig;
    return big;
}

std::array<BoxPx, 4> local_search(const BoxPx& box, double alpha, double beta,
                                  const GeometryMeta& geom) {
    const double cx = box.center_x();
    const double cy = box.center_y();
    auto scaled = [](int extent, double ratio) { return std::max(1, round_half_up(ratio * extent)); };
    const int w = box.width();
    const int h = box.height();
    const std::array<std::pair<double, double>, 4> ratios = {
        std::pair{beta, beta}, std::pair{beta, alpha}, std::pair{alpha, alpha}, std::pair{alpha, beta}};

    std::array<BoxPx, 4> out;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        out[i] = centered_box(cx, cy, scaled(w, ratios[i].first), scaled(h, ratios[i].second),
                              BoxKind::kScaled, geom);
    }
    return out;
}

}  // namespace relief::core
