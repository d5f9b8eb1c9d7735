#include <relief/types.hpp>

#include <cmath>
#include <unordered_set>

namespace relief {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kBadMagic: return "BadMagic";
        case ErrorCode::kTruncated: return "Truncated";
        case ErrorCode::kSizeMismatch: return "SizeMismatch";
        case ErrorCode::kInvalidShape: return "InvalidShape";
        case ErrorCode::kNonFinite: return "NonFinite";
        case ErrorCode::kMissingSidecar: return "MissingSidecar";
        case ErrorCode::kBadSidecar: return "BadSidecar";
        case ErrorCode::kReadError: return "ReadError";
        case ErrorCode::kWriteError: return "WriteError";
        case ErrorCode::kParseError: return "ParseError";
        case ErrorCode::kInvalidArgument: return "InvalidArgument";
        case ErrorCode::kDegenerateBox: return "DegenerateBox";
        case ErrorCode::kEmptyLevel: return "EmptyLevel";
        case ErrorCode::kPlacementFailed: return "PlacementFailed";
        case ErrorCode::kMissingImage: return "MissingImage";
    }
    return "Unknown";
}

std::string_view to_string(BoxKind kind) {
    switch (kind) {
        case BoxKind::kSmall: return "small";
        case BoxKind::kBig: return "big";
        case BoxKind::kScaled: return "scaled";
        case BoxKind::kRefined: return "refined";
    }
    return "small";
}

BoxKind box_kind_from_string(std::string_view text) {
    if (text == "small") return BoxKind::kSmall;
    if (text == "big") return BoxKind::kBig;
    if (text == "scaled") return BoxKind::kScaled;
    if (text == "refined") return BoxKind::kRefined;
    throw Error(ErrorCode::kParseError, "unknown box kind '" + std::string(text) + "'");
}

void GeometryMeta::validate() const {
    if (!(stride_x > 0.0) || !(stride_y > 0.0) || !std::isfinite(stride_x) ||
        !std::isfinite(stride_y)) {
        throw Error(ErrorCode::kInvalidArgument, "geometry strides must be finite and > 0");
    }
    if (!(offset_x >= 0.0) || !(offset_y >= 0.0) || !std::isfinite(offset_x) ||
        !std::isfinite(offset_y)) {
        throw Error(ErrorCode::kInvalidArgument, "geometry offsets must be finite and >= 0");
    }
    if (image_w <= 0 || image_h <= 0) {
        throw Error(ErrorCode::kInvalidArgument, "geometry image dimensions must be > 0");
    }
}

void FeatureStack::validate() const {
    if (channels == 0 || height == 0 || width == 0) {
        throw Error(ErrorCode::kInvalidShape, "channels, height and width must all be >= 1");
    }
    const std::size_t expected = static_cast<std::size_t>(channels) * height * width;
    if (values.size() != expected) {
        throw Error(ErrorCode::kSizeMismatch, "expected " + std::to_string(expected) +
                                                  " values, have " + std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(ErrorCode::kNonFinite, "value at index " + std::to_string(i) + " is not finite");
        }
    }
    geometry.validate();
}

void AnnotationSet::validate() const {
    std::unordered_set<std::string> seen;
    for (const auto& rec : records) {
        if (rec.image_id.empty()) {
            throw Error(ErrorCode::kInvalidArgument, "annotation with empty image_id");
        }
        if (!seen.insert(rec.image_id).second) {
            throw Error(ErrorCode::kInvalidArgument, "duplicate image_id '" + rec.image_id + "'");
        }
        for (const auto& b : rec.gt_boxes) {
            if (b.x0 > b.x1 || b.y0 > b.y1) {
                throw Error(ErrorCode::kInvalidArgument,
                            "gt box with inverted corners in '" + rec.image_id + "'");
            }
        }
    }
}

}  // namespace relief
