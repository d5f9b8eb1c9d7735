#pragma once

#include <relief/clusters.hpp>

#include <array>
#include <span>

namespace relief::core {

/// floor(x + 0.5)
int round_half_up(double x);

/// Clips to [0, image_w-1] x [0, image_h-1]. Throws kDegenerateBox when the
/// box lies entirely outside the image.
BoxPx clip_to_image(BoxPx box, const GeometryMeta& geom);

/**
 * @brief Integer box of size width x height whose real-valued center is as
 *        close as possible to (cx, cy), then clipped to the image.
 *
 * Width and height must already be >= 1. The center lands within 0.5 px of
 * the request before clipping.
 */
BoxPx centered_box(double cx, double cy, int width, int height, BoxKind kind,
                   const GeometryMeta& geom);

/// Pixel tile union of a cell rectangle, clipped; kind small.
BoxPx cell_bounds_to_box(const CellBounds& bounds, const GeometryMeta& geom);

/// Maps a cluster's bounds through the geometry. Throws kDegenerateBox when the
/// mapped region falls entirely outside the image.
BoxPx cluster_to_box(const Cluster& cluster, const GeometryMeta& geom);

/// Tight bounding box of all inputs, kind big. Throws kEmptyLevel on empty input.
BoxPx big_roi(std::span<const BoxPx> small_boxes);

/**
 * @brief Four rescaled variants of `box` sharing its center.
 *
 * Sizes in order: (beta*w, beta*h), (beta*w, alpha*h), (alpha*w, alpha*h),
 * (alpha*w, beta*h), each rounded half-up with a 1 px floor, then clipped.
 * The input box itself is not part of the result.
 */
std::array<BoxPx, 4> local_search(const BoxPx& box, double alpha, double beta,
                                  const GeometryMeta& geom);

}  // namespace relief::core
