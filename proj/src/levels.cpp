#include <relief/levels.hpp>

#include <algorithm>
#include <cmath>

namespace relief::core {

int level_for_value(double value, double value_min, double stride, int level_count) {
    if (!(stride > 0.0)) return 1;
    auto guess = static_cast<long long>(std::floor((value - value_min) / stride)) + 1;
    int level = static_cast<int>(std::clamp<long long>(guess, 1, level_count));
    // The quotient can land one bin off near a boundary; settle against the
    // boundaries themselves so the bin predicate holds exactly.
    while (level > 1 && value < value_min + (level - 1) * stride) --level;
    while (level < level_count && value >= value_min + level * stride) ++level;
    return level;
}

LevelPartition separate_levels(const IntegrateMap& map, int level_count) {
    if (level_count < 1) {
        throw Error(ErrorCode::kInvalidArgument, "level count must be >= 1");
    }
    LevelPartition part;
    part.level_count = level_count;
    part.height = map.height;
    part.width = map.width;
    part.level_of.resize(map.values.size(), 1);
    if (map.values.empty()) return part;

    const auto [lo, hi] = std::minmax_element(map.values.begin(), map.values.end());
    part.value_min = *lo;
    part.value_max = *hi;
    part.stride = (part.value_max - part.value_min) / level_count;

    for (std::size_t i = 0; i < map.values.size(); ++i) {
        part.level_of[i] = level_for_value(map.values[i], part.value_min, part.stride, level_count);
    }
    return part;
}

std::vector<int> LevelPartition::histogram() const {
    std::vector<int> counts(static_cast<std::size_t>(level_count), 0);
    for (int level : level_of) {
        ++counts[static_cast<std::size_t>(level - 1)];
    }
    return counts;
}

}  // namespace relief::core
