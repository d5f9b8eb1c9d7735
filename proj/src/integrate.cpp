#include <relief/integrate.hpp>

#include <algorithm>

namespace relief::core {

IntegrateMap build_integrate_map(const FeatureStack& stack) {
    stack.validate();
    IntegrateMap map;
    map.height = static_cast<int>(stack.height);
    map.width = static_cast<int>(stack.width);
    map.values.assign(stack.cells_per_channel(), 0.0f);

    for (std::uint32_t c = 0; c < stack.channels; ++c) {
        const auto channel = stack.channel(c);
        const float peak = *std::max_element(channel.begin(), channel.end());
        if (!(peak > 0.0f)) continue;
        for (std::size_t i = 0; i < channel.size(); ++i) {
            map.values[i] += channel[i] / peak;
        }
    }
    return map;
}

}  // namespace relief::core
