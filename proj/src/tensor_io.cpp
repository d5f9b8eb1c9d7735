#include <relief/tensor_io.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>

namespace relief::io {

namespace {

constexpr std::array<std::byte, 4> kMagic = {std::byte{'R'}, std::byte{'F'}, std::byte{'M'},
                                             std::byte{'1'}};

void put_u32(std::vector<std::byte>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFFu));
    }
}

std::uint32_t get_u32(std::span<const std::byte> bytes, std::size_t pos) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(bytes[pos + i]) << (8 * i);
    }
    return v;
}

std::vector<std::byte> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kReadError, "cannot open " + path.string());
    }
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw Error(ErrorCode::kReadError, "failed reading " + path.string());
    }
    std::vector<std::byte> bytes(raw.size());
    std::transform(raw.begin(), raw.end(), bytes.begin(),
                   [](char c) { return static_cast<std::byte>(c); });
    return bytes;
}

double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw Error(ErrorCode::kBadSidecar, std::string("missing numeric field '") + key + "'");
    }
    return j.at(key).get<double>();
}

int require_dimension(const nlohmann::json& j, const char* key) {
    const double v = require_number(j, key);
    if (v != std::floor(v) || v < 1.0 || v > 1e9) {
        throw Error(ErrorCode::kBadSidecar, std::string("field '") + key + "' must be a positive integer");
    }
    return static_cast<int>(v);
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    return std::filesystem::path(path.string() + ".geom.json");
}

std::vector<std::byte> encode_rfm1(const FeatureStack& stack) {
    std::vector<std::byte> out;
    out.reserve(kRfm1HeaderBytes + stack.values.size() * 4);
    for (std::byte b : kMagic) out.push_back(b);
    put_u32(out, stack.channels);
    put_u32(out, stack.height);
    put_u32(out, stack.width);
    for (float v : stack.values) {
        put_u32(out, std::bit_cast<std::uint32_t>(v));
    }
    return out;
}

FeatureStack decode_rfm1(std::span<const std::byte> bytes) {
    if (bytes.size() < kMagic.size() ||
        !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
        throw Error(ErrorCode::kBadMagic, "file does not start with RFM1");
    }
    if (bytes.size() < kRfm1HeaderBytes) {
        throw Error(ErrorCode::kTruncated, "header shorter than 16 bytes");
    }
    FeatureStack stack;
    stack.channels = get_u32(bytes, 4);
    stack.height = get_u32(bytes, 8);
    stack.width = get_u32(bytes, 12);
    if (stack.channels == 0 || stack.height == 0 || stack.width == 0) {
        throw Error(ErrorCode::kInvalidShape, "declared shape has a zero dimension");
    }
    const std::uint64_t count =
        static_cast<std::uint64_t>(stack.channels) * stack.height * stack.width;
    const std::uint64_t payload = bytes.size() - kRfm1HeaderBytes;
    if (payload < count * 4) {
        throw Error(ErrorCode::kTruncated, "payload has " + std::to_string(payload) +
                                               " bytes, shape needs " + std::to_string(count * 4));
    }
    if (payload > count * 4) {
        throw Error(ErrorCode::kSizeMismatch, "payload has " + std::to_string(payload - count * 4) +
                                                  " trailing bytes");
    }
    stack.values.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const float v = std::bit_cast<float>(get_u32(bytes, kRfm1HeaderBytes + 4 * i));
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::kNonFinite, "value at index " + std::to_string(i) + " is not finite");
        }
        stack.values[i] = v;
    }
    return stack;
}

GeometryMeta load_geometry(const std::filesystem::path& sidecar) {
    std::ifstream in(sidecar);
    if (!in) {
        throw Error(ErrorCode::kMissingSidecar, "cannot open " + sidecar.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kBadSidecar, sidecar.string() + ": " + e.what());
    }
    if (!j.is_object()) {
        throw Error(ErrorCode::kBadSidecar, sidecar.string() + ": expected a JSON object");
    }
    GeometryMeta geom;
    geom.stride_x = require_number(j, "stride_x");
    geom.stride_y = require_number(j, "stride_y");
    geom.offset_x = require_number(j, "offset_x");
    geom.offset_y = require_number(j, "offset_y");
    geom.image_w = require_dimension(j, "image_w");
    geom.image_h = require_dimension(j, "image_h");
    try {
        geom.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::kBadSidecar, sidecar.string() + ": " + e.what());
    }
    return geom;
}

void save_geometry(const GeometryMeta& geom, const std::filesystem::path& sidecar) {
    nlohmann::ordered_json j;
    j["stride_x"] = geom.stride_x;
    j["stride_y"] = geom.stride_y;
    j["offset_x"] = geom.offset_x;
    j["offset_y"] = geom.offset_y;
    j["image_w"] = geom.image_w;
    j["image_h"] = geom.image_h;
    std::ofstream out(sidecar);
    out << j.dump(2) << '\n';
    if (!out) {
        throw Error(ErrorCode::kWriteError, "cannot write " + sidecar.string());
    }
}

FeatureStack load_feature_stack(const std::filesystem::path& path) {
    const auto bytes = read_all(path);
    FeatureStack stack = decode_rfm1(bytes);
    const auto sidecar = sidecar_path(path);
    if (!std::filesystem::exists(sidecar)) {
        throw Error(ErrorCode::kMissingSidecar, "no geometry sidecar " + sidecar.string());
    }
    stack.geometry = load_geometry(sidecar);
    return stack;
}

void save_feature_stack(const FeatureStack& stack, const std::filesystem::path& path) {
    stack.validate();
    const auto bytes = encode_rfm1(stack);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::kWriteError, "cannot open " + path.string() + " for writing");
        }
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            throw Error(ErrorCode::kWriteError, "failed writing " + path.string());
        }
    }
    save_geometry(stack.geometry, sidecar_path(path));
}

}  // namespace relief::io
