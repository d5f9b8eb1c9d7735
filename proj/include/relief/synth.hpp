#pragma once

#include <relief/types.hpp>

#include <cstdint>
#include <vector>

namespace relief::eval {

/// Parameters of a synthetic feature scene with planted rectangular objects.
struct SynthParams {
    GeometryMeta geometry{8.0, 8.0, 0.0, 0.0, 256, 256};
    int channels = 4;
    int n_objects = 3;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    int blob_min_cells = 2;  ///< per side
    int blob_max_cells = 5;  ///< per side
    int max_retries = 1000;  ///< placement attempts per object
};

struct SynthScene {
    FeatureStack stack;
    std::vector<BoxPx> gt_boxes;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

/// Cell grid covering the image: ceil((image - offset) / stride) per axis.
std::pair<int, int> synth_grid_size(const GeometryMeta& geom);

/**
 * @brief Deterministic scene for a given seed.
 *
 * Blobs are rectangles of value 1.0 in every channel on a 0.0 background,
 * with at least one empty cell between any two blobs so they never touch
 * under 8-connectivity. Gaussian noise of noise_sigma is then added to every
 * value. gt boxes are the blob extents mapped through the geometry.
 * Throws kPlacementFailed when a blob cannot be placed within max_retries.
 */
SynthScene synth_scene(const SynthParams& params);

}  // namespace relief::eval
