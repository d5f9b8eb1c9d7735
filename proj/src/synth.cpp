#include <relief/synth.hpp>

#include <relief/boxes.hpp>

#include <cmath>
#include <random>

namespace relief::eval {

std::pair<int, int> synth_grid_size(const GeometryMeta& geom) {
    const int rows = static_cast<int>(std::ceil((geom.image_h - geom.offset_y) / geom.stride_y));
    const int cols = static_cast<int>(std::ceil((geom.image_w - geom.offset_x) / geom.stride_x));
    return {rows, cols};
}

SynthScene synth_scene(const SynthParams& params) {
    params.geometry.validate();
    if (params.channels < 1 || params.n_objects < 0 || params.blob_min_cells < 1 ||
        params.blob_max_cells < params.blob_min_cells || !(params.noise_sigma >= 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "invalid synthetic scene parameters");
    }
    const auto [rows, cols] = synth_grid_size(params.geometry);
    if (rows < 1 || cols < 1) {
        throw Error(ErrorCode::kInvalidArgument, "geometry leaves no cells inside the image");
    }

    SynthScene scene;
    scene.seed = params.seed;
    scene.noise_sigma = params.noise_sigma;
    scene.stack = FeatureStack(static_cast<std::uint32_t>(params.channels),
                               static_cast<std::uint32_t>(rows), static_cast<std::uint32_t>(cols),
                               params.geometry);

    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<int> size_dist(params.blob_min_cells, params.blob_max_cells);
    // Blocked cells: blob cells plus their one-cell halo.
    std::vector<char> blocked(static_cast<std::size_t>(rows) * cols, 0);
    std::vector<core::CellBounds> blobs;

    for (int obj = 0; obj < params.n_objects; ++obj) {
        bool placed = false;
        for (int attempt = 0; attempt < params.max_retries && !placed; ++attempt) {
            const int bh = size_dist(rng);
            const int bw = size_dist(rng);
            if (bh > rows || bw > cols) continue;
            const int r0 = std::uniform_int_distribution<int>(0, rows - bh)(rng);
            const int c0 = std::uniform_int_distribution<int>(0, cols - bw)(rng);
            bool free = true;
            for (int r = r0; r < r0 + bh && free; ++r) {
                for (int c = c0; c < c0 + bw; ++c) {
                    if (blocked[static_cast<std::size_t>(r) * cols + c]) {
                        free = false;
                        break;
                    }
                }
            }
            if (!free) continue;
            for (int r = std::max(0, r0 - 1); r < std::min(rows, r0 + bh + 1); ++r) {
                for (int c = std::max(0, c0 - 1); c < std::min(cols, c0 + bw + 1); ++c) {
                    blocked[static_cast<std::size_t>(r) * cols + c] = 1;
                }
            }
            blobs.push_back({r0, r0 + bh - 1, c0, c0 + bw - 1});
            placed = true;
        }
        if (!placed) {
            throw Error(ErrorCode::kPlacementFailed,
                        "could not place object " + std::to_string(obj + 1) + " of " +
                            std::to_string(params.n_objects));
        }
    }

    for (const auto& blob : blobs) {
        for (std::uint32_t ch = 0; ch < scene.stack.channels; ++ch) {
            for (int r = blob.row_min; r <= blob.row_max; ++r) {
                for (int c = blob.col_min; c <= blob.col_max; ++c) {
                    scene.stack.at(ch, static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)) = 1.0f;
                }
            }
        }
        scene.gt_boxes.push_back(core::cell_bounds_to_box(blob, params.geometry));
    }

    if (params.noise_sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, params.noise_sigma);
        for (auto& v : scene.stack.values) {
            v = static_cast<float>(v + noise(rng));
        }
    }
    return scene;
}

}  // namespace relief::eval
