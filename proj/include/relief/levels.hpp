#pragma once

#include <relief/integrate.hpp>

#include <vector>

namespace relief::core {

/**
 * @brief Assignment of every integrate-map cell to one of `level_count`
 *        uniform value bins.
 *
 * Bin i (1-based) covers [value_min + (i-1)*stride, value_min + i*stride);
 * the last bin is closed at value_max so the partition is total.
 */
struct LevelPartition {
    int level_count = 1;
    double stride = 0.0;
    double value_min = 0.0;
    double value_max = 0.0;
    int height = 0;
    int width = 0;
    std::vector<int> level_of;  ///< row-major, values in 1..level_count

    int at(int row, int col) const { return level_of[static_cast<std::size_t>(row) * width + col]; }
    /// Lower boundary of bin `level`, value_min + (level-1)*stride.
    double lower_bound(int level) const { return value_min + (level - 1) * stride; }
    /// Number of cells in each level; index 0 is level 1.
    std::vector<int> histogram() const;
};

/// Bin index of `value` for the given range; stride 0 maps everything to 1.
int level_for_value(double value, double value_min, double stride, int level_count);

/// Throws Error(kInvalidArgument) when level_count < 1.
LevelPartition separate_levels(const IntegrateMap& map, int level_count);

}  // namespace relief::core
