#include <relief/clusters.hpp>

#include <algorithm>
#include <numeric>

namespace relief::core {

namespace {

// Two-pass labeling with union-find (Rosenfeld-Pfaltz). Cells with the same
// level that touch under the connectivity end up under one root.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        // Keep the smaller index as root so roots are first cells in raster order.
        if (a < b) parent_[b] = a; else parent_[a] = b;
    }

private:
    std::vector<std::size_t> parent_;
};

/// Labels cells whose level is `only_level`, or every cell when only_level == 0.
std::vector<Cluster> label(const LevelPartition& part, Connectivity connectivity, int only_level) {
    const int h = part.height;
    const int w = part.width;
    const auto n = static_cast<std::size_t>(h) * static_cast<std::size_t>(w);
    const bool diagonal = connectivity == Connectivity::kEight;
    auto included = [&](std::size_t idx) {
        return only_level == 0 || part.level_of[idx] == only_level;
    };

    DisjointSet sets(n);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * w + c;
            if (!included(idx)) continue;
            const int level = part.level_of[idx];
            auto link = [&](int rr, int cc) {
                if (rr < 0 || cc < 0 || cc >= w) return;
                const std::size_t other = static_cast<std::size_t>(rr) * w + cc;
                if (part.level_of[other] == level) sets.unite(idx, other);
            };
            link(r, c - 1);
            link(r - 1, c);
            if (diagonal) {
                link(r - 1, c - 1);
                link(r - 1, c + 1);
            }
        }
    }

    std::vector<Cluster> clusters;
    std::vector<int> slot(n, -1);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * w + c;
            if (!included(idx)) continue;
            const std::size_t root = sets.find(idx);
            if (slot[root] < 0) {
                slot[root] = static_cast<int>(clusters.size());
                Cluster fresh;
                fresh.level = part.level_of[idx];
                fresh.bounds = {r, r, c, c};
                clusters.push_back(std::move(fresh));
            }
            Cluster& cl = clusters[static_cast<std::size_t>(slot[root])];
            cl.cells.push_back({r, c});
            cl.bounds.row_max = std::max(cl.bounds.row_max, r);
            cl.bounds.col_min = std::min(cl.bounds.col_min, c);
            cl.bounds.col_max = std::max(cl.bounds.col_max, c);
        }
    }
    // Clusters were created in raster order of their first cell, which fixes ties.
    std::stable_sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
        if (a.bounds.row_min != b.bounds.row_min) return a.bounds.row_min < b.bounds.row_min;
        return a.bounds.col_min < b.bounds.col_min;
    });
    return clusters;
}

}  // namespace

Connectivity connectivity_from_int(int n) {
    if (n == 4) return Connectivity::kFour;
    if (n == 8) return Connectivity::kEight;
    throw Error(ErrorCode::kInvalidArgument, "connectivity must be 4 or 8, got " + std::to_string(n));
}

std::vector<Cluster> extract_clusters(const LevelPartition& part, int level,
                                      Connectivity connectivity) {
    if (level < 1 || level > part.level_count) {
        throw Error(ErrorCode::kInvalidArgument, "level " + std::to_string(level) + " outside 1.." +
                                                     std::to_string(part.level_count));
    }
    return label(part, connectivity, level);
}

std::vector<std::vector<Cluster>> extract_all_clusters(const LevelPartition& part,
                                                       Connectivity connectivity) {
    std::vector<std::vector<Cluster>> by_level(static_cast<std::size_t>(part.level_count));
    for (auto& cl : label(part, connectivity, 0)) {
        by_level[static_cast<std::size_t>(cl.level - 1)].push_back(std::move(cl));
    }
    return by_level;
}

}  // namespace relief::core
