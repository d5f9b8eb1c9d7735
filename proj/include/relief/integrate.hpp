#pragma once

#include <relief/types.hpp>

#include <vector>

namespace relief::core {

/// Single H x W map summarizing a whole feature stack.
struct IntegrateMap {
    int height = 0;
    int width = 0;
    std::vector<float> values;  ///< row-major

    float at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
};

/**
 * @brief Max-normalizes each channel and sums the channels cell by cell.
 *
 * A channel whose maximum is positive contributes value / max. A channel with
 * no positive activation (max <= 0) contributes nothing, so every channel's
 * contribution is at most 1 and the map is bounded above by C.
 */
IntegrateMap build_integrate_map(const FeatureStack& stack);

}  // namespace relief::core
