#include <relief/clusters.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

namespace relief::core {
namespace {

/// Two-level partition: listed cells are level 2, everything else level 1.
LevelPartition mask_partition(int h, int w, const std::vector<Cell>& on) {
    LevelPartition part;
    part.level_count = 2;
    part.height = h;
    part.width = w;
    part.level_of.assign(static_cast<std::size_t>(h * w), 1);
    for (const auto& c : on) part.level_of[static_cast<std::size_t>(c.row * w + c.col)] = 2;
    return part;
}

std::set<oracle::CellSet> as_sets(const std::vector<Cluster>& clusters) {
    std::set<oracle::CellSet> out;
    for (const auto& cl : clusters) {
        oracle::CellSet s;
        for (const auto& c : cl.cells) s.insert({c.row, c.col});
        out.insert(s);
    }
    return out;
}

TEST(ExtractClusters, FourConnectivitySplitsFarCell) {
    const auto part = mask_partition(8, 8, {{0, 0}, {0, 1}, {5, 5}});
    const auto clusters = extract_clusters(part, 2, Connectivity::kFour);
    ASSERT_EQ(clusters.size(), 2u);
    EXPECT_EQ(clusters[0].cells, (std::vector<Cell>{{0, 0}, {0, 1}}));
    EXPECT_EQ(clusters[1].cells, (std::vector<Cell>{{5, 5}}));
    EXPECT_EQ(clusters[0].bounds, (CellBounds{0, 0, 0, 1}));
}

TEST(ExtractClusters, DiagonalNeighborsDependOnConnectivity) {
    const auto part = mask_partition(3, 3, {{0, 0}, {1, 1}});
    EXPECT_EQ(extract_clusters(part, 2, Connectivity::kEight).size(), 1u);
    EXPECT_EQ(extract_clusters(part, 2, Connectivity::kFour).size(), 2u);
}

TEST(ExtractClusters, EmptyLevel) {
    const auto part = mask_partition(4, 4, {});
    EXPECT_TRUE(extract_clusters(part, 2, Connectivity::kEight).empty());
    EXPECT_THROW(extract_clusters(part, 3, Connectivity::kEight), Error);
}

TEST(ExtractClusters, AntiDiagonalMergesUnderEight) {
    // (0,2) reaches (1,1) only through the up-right neighbor of (1,1).
    const auto part = mask_partition(3, 3, {{0, 2}, {1, 1}, {2, 0}});
    EXPECT_EQ(extract_clusters(part, 2, Connectivity::kEight).size(), 1u);
    EXPECT_EQ(extract_clusters(part, 2, Connectivity::kFour).size(), 3u);
}

TEST(ExtractClusters, TiedBoundsOrderedByFirstRasterCell) {
    // The corner cell and the U-shaped ring around it both have bounds
    // starting at (0, 0) under 4-connectivity.
    const auto part = mask_partition(3, 3, {{0, 0}, {0, 2}, {1, 2}, {2, 2}, {2, 1}, {2, 0}});
    const auto clusters = extract_clusters(part, 2, Connectivity::kFour);
    ASSERT_EQ(clusters.size(), 2u);
    EXPECT_EQ(clusters[0].cells.front(), (Cell{0, 0}));
    EXPECT_EQ(clusters[0].size(), 1u);
    EXPECT_EQ(clusters[1].bounds, (CellBounds{0, 2, 0, 2}));
}

TEST(ExtractClusters, MatchesFloodFillOnRandomMasks) {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> dim(1, 12);
    std::uniform_real_distribution<double> density(0.1, 0.9);
    for (int trial = 0; trial < 500; ++trial) {
        const int h = dim(rng);
        const int w = dim(rng);
        const double p = density(rng);
        std::vector<Cell> on;
        std::vector<char> mask(static_cast<std::size_t>(h * w), 0);
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                if (std::bernoulli_distribution(p)(rng)) {
                    on.push_back({r, c});
                    mask[static_cast<std::size_t>(r * w + c)] = 1;
                }
            }
        }
        const auto part = mask_partition(h, w, on);
        for (bool diagonal : {false, true}) {
            const auto conn = diagonal ? Connectivity::kEight : Connectivity::kFour;
            const auto clusters = extract_clusters(part, 2, conn);
            const auto expected = oracle::flood_fill(mask, h, w, diagonal);
            ASSERT_EQ(clusters.size(), expected.size());
            EXPECT_EQ(as_sets(clusters), std::set<oracle::CellSet>(expected.begin(), expected.end()));
            for (std::size_t i = 1; i < clusters.size(); ++i) {
                const auto& a = clusters[i - 1].bounds;
                const auto& b = clusters[i].bounds;
                EXPECT_TRUE(a.row_min < b.row_min || (a.row_min == b.row_min && a.col_min <= b.col_min));
            }
        }
    }
}

TEST(ExtractAllClusters, AgreesWithPerLevelExtraction) {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> lv(1, 4);
    LevelPartition part;
    part.level_count = 4;
    part.height = 10;
    part.width = 11;
    part.level_of.resize(110);
    for (auto& l : part.level_of) l = lv(rng);
    const auto all = extract_all_clusters(part, Connectivity::kEight);
    ASSERT_EQ(all.size(), 4u);
    std::size_t cells = 0;
    for (int level = 1; level <= 4; ++level) {
        const auto single = extract_clusters(part, level, Connectivity::kEight);
        ASSERT_EQ(single.size(), all[static_cast<std::size_t>(level - 1)].size());
        for (std::size_t i = 0; i < single.size(); ++i) {
            EXPECT_EQ(single[i].cells, all[static_cast<std::size_t>(level - 1)][i].cells);
            cells += single[i].size();
        }
    }
    EXPECT_EQ(cells, 110u);
}

}  // namespace
}  // namespace relief::core
