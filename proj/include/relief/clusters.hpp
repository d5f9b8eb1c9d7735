#pragma once

#include <relief/levels.hpp>

#include <vector>

namespace relief::core {

enum class Connectivity { kFour = 4, kEight = 8 };

/// Throws kInvalidArgument for anything other than 4 or 8.
Connectivity connectivity_from_int(int n);

struct Cell {
    int row = 0;
    int col = 0;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct CellBounds {
    int row_min = 0;
    int row_max = 0;
    int col_min = 0;
    int col_max = 0;
    friend bool operator==(const CellBounds&, const CellBounds&) = default;
};

/// One connected component of same-level cells. `cells` is in raster order.
struct Cluster {
    int level = 1;
    std::vector<Cell> cells;
    CellBounds bounds;

    std::size_t size() const noexcept { return cells.size(); }
};

/**
 * @brief Maximal connected components of the cells assigned to `level`.
 *
 * Output is ordered by (row_min, col_min) of the bounds, ties broken by the
 * first cell in raster order. Empty level gives an empty list.
 */
std::vector<Cluster> extract_clusters(const LevelPartition& part, int level,
                                      Connectivity connectivity);

/// Clusters for every level from a single labeling pass; index 0 is level 1.
std::vector<std::vector<Cluster>> extract_all_clusters(const LevelPartition& part,
                                                       Connectivity connectivity);

}  // namespace relief::core
