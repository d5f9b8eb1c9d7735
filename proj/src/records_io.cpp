#include <relief/tensor_io.hpp>

#include <json.hpp>

#include <fstream>
#include <limits>

namespace relief::io {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": " + what);
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

int to_coord(const nlohmann::json& v, std::size_t line_no) {
    if (!v.is_number_integer()) {
        fail_line(line_no, "box coordinate must be an integer");
    }
    const auto x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        fail_line(line_no, "box coordinate out of range");
    }
    return static_cast<int>(x);
}

std::string require_id(const nlohmann::json& j, std::size_t line_no) {
    if (!j.contains("image_id") || !j.at("image_id").is_string()) {
        fail_line(line_no, "missing string field 'image_id'");
    }
    auto id = j.at("image_id").get<std::string>();
    if (id.empty()) {
        fail_line(line_no, "empty image_id");
    }
    return id;
}

/// Calls `handle(json, line_no)` for each non-blank line.
template <typename Fn>
void for_each_json_line(std::istream& in, Fn&& handle) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            fail_line(line_no, e.what());
        }
        if (!j.is_object()) {
            fail_line(line_no, "expected a JSON object");
        }
        handle(j, line_no);
    }
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::kReadError, "cannot open " + path.string());
    }
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::kWriteError, "cannot open " + path.string() + " for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw Error(ErrorCode::kWriteError, "failed writing " + path.string());
    }
}

}  // namespace

// -----------------------------------------------------------------------------
// Annotations
// -----------------------------------------------------------------------------

AnnotationSet read_annotations(std::istream& in) {
    AnnotationSet set;
    for_each_json_line(in, [&](const nlohmann::json& j, std::size_t line_no) {
        AnnotationRecord rec;
        rec.image_id = require_id(j, line_no);
        if (!j.contains("gt_boxes") || !j.at("gt_boxes").is_array()) {
            fail_line(line_no, "missing array field 'gt_boxes'");
        }
        for (const auto& b : j.at("gt_boxes")) {
            if (!b.is_array() || b.size() != 4) {
                fail_line(line_no, "gt box must be [x0,y0,x1,y1]");
            }
            BoxPx box{to_coord(b[0], line_no), to_coord(b[1], line_no), to_coord(b[2], line_no),
                      to_coord(b[3], line_no)};
            if (box.x0 > box.x1 || box.y0 > box.y1) {
                fail_line(line_no, "gt box has inverted corners");
            }
            rec.gt_boxes.push_back(box);
        }
        for (const auto& prev : set.records) {
            if (prev.image_id == rec.image_id) {
                fail_line(line_no, "duplicate image_id '" + rec.image_id + "'");
            }
        }
        set.records.push_back(std::move(rec));
    });
    return set;
}

AnnotationSet load_annotations(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_annotations(in);
}

void write_annotations(const AnnotationSet& set, std::ostream& out) {
    for (const auto& rec : set.records) {
        ordered_json j;
        j["image_id"] = rec.image_id;
        j["gt_boxes"] = ordered_json::array();
        for (const auto& b : rec.gt_boxes) {
            j["gt_boxes"].push_back({b.x0, b.y0, b.x1, b.y1});
        }
        out << j.dump() << '\n';
    }
}

void save_annotations(const AnnotationSet& set, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_annotations(set, out);
    finish(out, path);
}

// -----------------------------------------------------------------------------
// Proposals
// -----------------------------------------------------------------------------

std::vector<ProposalSet> read_proposals(std::istream& in) {
    std::vector<ProposalSet> props;
    for_each_json_line(in, [&](const nlohmann::json& j, std::size_t line_no) {
        ProposalSet set;
        set.image_id = require_id(j, line_no);
        if (!j.contains("gen_time_ns") || !j.at("gen_time_ns").is_number_integer()) {
            fail_line(line_no, "missing integer field 'gen_time_ns'");
        }
        set.gen_time_ns = j.at("gen_time_ns").get<std::int64_t>();
        if (set.gen_time_ns < 0) {
            fail_line(line_no, "gen_time_ns must be >= 0");
        }
        if (!j.contains("boxes") || !j.at("boxes").is_array()) {
            fail_line(line_no, "missing array field 'boxes'");
        }
        for (const auto& b : j.at("boxes")) {
            if (!b.is_object()) {
                fail_line(line_no, "box must be an object");
            }
            for (const char* key : {"x0", "y0", "x1", "y1", "kind"}) {
                if (!b.contains(key)) {
                    fail_line(line_no, std::string("box missing field '") + key + "'");
                }
            }
            if (!b.at("kind").is_string()) {
                fail_line(line_no, "box kind must be a string");
            }
            BoxPx box{to_coord(b.at("x0"), line_no), to_coord(b.at("y0"), line_no),
                      to_coord(b.at("x1"), line_no), to_coord(b.at("y1"), line_no)};
            try {
                box.kind = box_kind_from_string(b.at("kind").get<std::string>());
            } catch (const Error& e) {
                fail_line(line_no, e.what());
            }
            set.boxes.push_back(box);
        }
        props.push_back(std::move(set));
    });
    return props;
}

std::vector<ProposalSet> load_proposals(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_proposals(in);
}

void write_proposals(const std::vector<ProposalSet>& props, std::ostream& out) {
    for (const auto& set : props) {
        ordered_json j;
        j["image_id"] = set.image_id;
        j["gen_time_ns"] = set.gen_time_ns;
        j["boxes"] = ordered_json::array();
        for (const auto& b : set.boxes) {
            ordered_json jb;
            jb["x0"] = b.x0;
            jb["y0"] = b.y0;
            jb["x1"] = b.x1;
            jb["y1"] = b.y1;
            jb["kind"] = std::string(to_string(b.kind));
            j["boxes"].push_back(std::move(jb));
        }
        out << j.dump() << '\n';
    }
}

void save_proposals(const std::vector<ProposalSet>& props, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_proposals(props, out);
    finish(out, path);
}

}  // namespace relief::io
