/**
 * @file types.hpp
 * @brief Value types shared by every pipeline stage: feature stacks, pixel
 *        boxes, geometry metadata, proposal and annotation records.
 */
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace relief {

// =============================================================================
// Errors
// =============================================================================

enum class ErrorCode {
    kBadMagic,
    kTruncated,
    kSizeMismatch,
    kInvalidShape,
    kNonFinite,
    kMissingSidecar,
    kBadSidecar,
    kReadError,
    kWriteError,
    kParseError,
    kInvalidArgument,
    kDegenerateBox,
    kEmptyLevel,
    kPlacementFailed,
    kMissingImage,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the named codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// =============================================================================
// Geometry
// =============================================================================

/**
 * @brief Affine map from feature cells to source-image pixels.
 *
 * Cell (row, col) covers the pixel tile starting at
 * (offset_x + col * stride_x, offset_y + row * stride_y) with size
 * stride_x by stride_y.
 */
struct GeometryMeta {
    double stride_x = 1.0;
    double stride_y = 1.0;
    double offset_x = 0.0;
    double offset_y = 0.0;
    int image_w = 1;
    int image_h = 1;

    /// Throws Error(kInvalidArgument) when a field is out of range.
    void validate() const;

    friend bool operator==(const GeometryMeta&, const GeometryMeta&) = default;
};

// =============================================================================
// Boxes
// =============================================================================

enum class BoxKind { kSmall, kBig, kScaled, kRefined };

std::string_view to_string(BoxKind kind);
/// Parses "small" / "big" / "scaled" / "refined"; throws kParseError otherwise.
BoxKind box_kind_from_string(std::string_view text);

/// Axis-aligned box in pixel coordinates with inclusive corners.
struct BoxPx {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;
    BoxKind kind = BoxKind::kSmall;

    int width() const noexcept { return x1 - x0 + 1; }
    int height() const noexcept { return y1 - y0 + 1; }
    std::int64_t area() const noexcept {
        return static_cast<std::int64_t>(width()) * static_cast<std::int64_t>(height());
    }
    double center_x() const noexcept { return (x0 + x1) / 2.0; }
    double center_y() const noexcept { return (y0 + y1) / 2.0; }

    /// Same corners, kind ignored.
    bool same_extent(const BoxPx& other) const noexcept {
        return x0 == other.x0 && y0 == other.y0 && x1 == other.x1 && y1 == other.y1;
    }
    /// True when `other` lies entirely inside this box.
    bool contains(const BoxPx& other) const noexcept {
        return x0 <= other.x0 && y0 <= other.y0 && other.x1 <= x1 && other.y1 <= y1;
    }
    /// True when 0 <= x0 <= x1 <= image_w-1 and likewise for y.
    bool inside(const GeometryMeta& geom) const noexcept {
        return 0 <= x0 && x0 <= x1 && x1 <= geom.image_w - 1 && 0 <= y0 && y0 <= y1 &&
               y1 <= geom.image_h - 1;
    }

    friend bool operator==(const BoxPx&, const BoxPx&) = default;
};

// =============================================================================
// Feature stack
// =============================================================================

/// C x H x W activations, channel-major then row-major, plus the cell geometry.
struct FeatureStack {
    std::uint32_t channels = 0;
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::vector<float> values;
    GeometryMeta geometry;

    FeatureStack() = default;
    FeatureStack(std::uint32_t c, std::uint32_t h, std::uint32_t w, GeometryMeta geom = {})
        : channels(c), height(h), width(w), values(static_cast<std::size_t>(c) * h * w, 0.0f),
          geometry(geom) {}

    std::size_t cells_per_channel() const noexcept {
        return static_cast<std::size_t>(height) * width;
    }
    float& at(std::uint32_t c, std::uint32_t row, std::uint32_t col) {
        return values[c * cells_per_channel() + static_cast<std::size_t>(row) * width + col];
    }
    float at(std::uint32_t c, std::uint32_t row, std::uint32_t col) const {
        return values[c * cells_per_channel() + static_cast<std::size_t>(row) * width + col];
    }
    std::span<const float> channel(std::uint32_t c) const {
        return std::span<const float>(values).subspan(c * cells_per_channel(), cells_per_channel());
    }

    /// Checks shape, payload length, finiteness and geometry.
    void validate() const;

    friend bool operator==(const FeatureStack&, const FeatureStack&) = default;
};

// =============================================================================
// Records
// =============================================================================

struct ProposalSet {
    std::string image_id;
    std::vector<BoxPx> boxes;
    std::int64_t gen_time_ns = 0;

    friend bool operator==(const ProposalSet&, const ProposalSet&) = default;
};

struct AnnotationRecord {
    std::string image_id;
    std::vector<BoxPx> gt_boxes;

    friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

struct AnnotationSet {
    std::vector<AnnotationRecord> records;

    /// Non-empty, unique ids and ordered corners; throws kInvalidArgument.
    void validate() const;

    friend bool operator==(const AnnotationSet&, const AnnotationSet&) = default;
};

}  // namespace relief
