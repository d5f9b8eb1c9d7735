/**
 * @file tensor_io.hpp
 * @brief RFM1 feature-stack files, geometry sidecars and JSON-lines records.
 *
 * RFM1 layout (all little-endian):
 *   bytes 0..3   magic "RFM1"
 *   bytes 4..15  uint32 C, H, W
 *   bytes 16..   C*H*W float32, channel-major then row-major
 *
 * Geometry lives next to the tensor in `<path>.geom.json`.
 */
#pragma once

#include <relief/types.hpp>

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace relief::io {

inline constexpr std::size_t kRfm1HeaderBytes = 16;

/// `<path>.geom.json`
std::filesystem::path sidecar_path(const std::filesystem::path& path);

/// Serializes the tensor part (header + payload) of a stack.
std::vector<std::byte> encode_rfm1(const FeatureStack& stack);

/// Parses header + payload; geometry is left default. Rejects any length
/// disagreement between the declared shape and the payload.
FeatureStack decode_rfm1(std::span<const std::byte> bytes);

GeometryMeta load_geometry(const std::filesystem::path& sidecar);
void save_geometry(const GeometryMeta& geom, const std::filesystem::path& sidecar);

FeatureStack load_feature_stack(const std::filesystem::path& path);
/// Writes `path` and its sidecar. Throws kWriteError on I/O failure.
void save_feature_stack(const FeatureStack& stack, const std::filesystem::path& path);

// -----------------------------------------------------------------------------
// JSON lines
// -----------------------------------------------------------------------------

/// Malformed lines raise kParseError with the 1-based line number in the message.
AnnotationSet read_annotations(std::istream& in);
AnnotationSet load_annotations(const std::filesystem::path& path);
void write_annotations(const AnnotationSet& set, std::ostream& out);
void save_annotations(const AnnotationSet& set, const std::filesystem::path& path);

std::vector<ProposalSet> read_proposals(std::istream& in);
std::vector<ProposalSet> load_proposals(const std::filesystem::path& path);
void write_proposals(const std::vector<ProposalSet>& props, std::ostream& out);
void save_proposals(const std::vector<ProposalSet>& props, const std::filesystem::path& path);

}  // namespace relief::io
