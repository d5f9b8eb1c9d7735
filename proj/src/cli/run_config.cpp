#include <relief/cli/run_config.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace relief::cli {

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw Error(ErrorCode::kParseError, "config key '" + key + "': " + why);
}

double as_number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) bad_key(key, "expected a number");
    return v.get<double>();
}

int as_int(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer()) bad_key(key, "expected an integer");
    return v.get<int>();
}

bool as_bool(const nlohmann::json& v, const std::string& key) {
    if (!v.is_boolean()) bad_key(key, "expected true or false");
    return v.get<bool>();
}

std::string as_string(const nlohmann::json& v, const std::string& key) {
    if (!v.is_string()) bad_key(key, "expected a string");
    return v.get<std::string>();
}

void apply_regressor(const nlohmann::json& j, refine::RegressorSpec& spec) {
    if (!j.is_object()) bad_key("regressor", "expected an object");
    for (const auto& [key, v] : j.items()) {
        const std::string full = "regressor." + key;
        if (key == "kind") {
            try {
                spec.kind = refine::regressor_kind_from_string(as_string(v, full));
            } catch (const Error& e) {
                bad_key(full, e.what());
            }
        } else if (key == "dx") {
            spec.dx = as_number(v, full);
        } else if (key == "dy") {
            spec.dy = as_number(v, full);
        } else if (key == "dw") {
            spec.dw = as_number(v, full);
        } else if (key == "dh") {
            spec.dh = as_number(v, full);
        } else {
            bad_key(full, "unknown key");
        }
    }
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j, RunConfig cfg) {
    if (!j.is_object()) {
        throw Error(ErrorCode::kParseError, "config must be a JSON object");
    }
    for (const auto& [key, v] : j.items()) {
        if (key == "levels") {
            cfg.pipeline.level_count = as_int(v, key);
        } else if (key == "alpha") {
            cfg.pipeline.alpha = as_number(v, key);
        } else if (key == "beta") {
            cfg.pipeline.beta = as_number(v, key);
        } else if (key == "connectivity") {
            try {
                cfg.pipeline.connectivity = core::connectivity_from_int(as_int(v, key));
            } catch (const Error& e) {
                bad_key(key, e.what());
            }
        } else if (key == "local_search") {
            cfg.pipeline.local_search_enabled = as_bool(v, key);
        } else if (key == "min_cluster_cells") {
            cfg.pipeline.min_cluster_cells = as_int(v, key);
        } else if (key == "dedup") {
            cfg.pipeline.dedup_exact = as_bool(v, key);
        } else if (key == "loops") {
            cfg.refine.loops = as_int(v, key);
        } else if (key == "convergence_eps") {
            cfg.refine.convergence_eps = as_number(v, key);
        } else if (key == "regressor") {
            apply_regressor(v, cfg.regressor);
        } else if (key == "features") {
            cfg.features.clear();
            if (v.is_string()) {
                cfg.features.push_back(v.get<std::string>());
            } else if (v.is_array()) {
                for (const auto& item : v) cfg.features.push_back(as_string(item, key));
            } else {
                bad_key(key, "expected a string or a list of strings");
            }
        } else if (key == "out") {
            cfg.out = as_string(v, key);
        } else if (key == "proposals") {
            cfg.proposals = as_string(v, key);
        } else if (key == "annotations") {
            cfg.annotations = as_string(v, key);
        } else if (key == "iou_grid") {
            cfg.iou_grid = as_string(v, key);
        } else if (key == "top_k") {
            if (v.is_null()) {
                cfg.top_k.reset();
            } else {
                const int k = as_int(v, key);
                if (k < 0) bad_key(key, "must be >= 0");
                cfg.top_k = static_cast<std::size_t>(k);
            }
        } else if (key == "jobs") {
            cfg.jobs = as_int(v, key);
        } else if (key == "repeats") {
            cfg.repeats = as_int(v, key);
        } else {
            bad_key(key, "unknown key");
        }
    }
    return cfg;
}

nlohmann::ordered_json run_config_to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["levels"] = cfg.pipeline.level_count;
    j["alpha"] = cfg.pipeline.alpha;
    j["beta"] = cfg.pipeline.beta;
    j["connectivity"] = static_cast<int>(cfg.pipeline.connectivity);
    j["local_search"] = cfg.pipeline.local_search_enabled;
    j["min_cluster_cells"] = cfg.pipeline.min_cluster_cells;
    j["dedup"] = cfg.pipeline.dedup_exact;
    j["loops"] = cfg.refine.loops;
    j["convergence_eps"] = cfg.refine.convergence_eps;
    j["regressor"] = {{"kind", std::string(refine::to_string(cfg.regressor.kind))},
                      {"dx", cfg.regressor.dx},
                      {"dy", cfg.regressor.dy},
                      {"dw", cfg.regressor.dw},
                      {"dh", cfg.regressor.dh}};
    j["features"] = cfg.features;
    j["out"] = cfg.out;
    j["proposals"] = cfg.proposals;
    j["annotations"] = cfg.annotations;
    j["iou_grid"] = cfg.iou_grid;
    j["top_k"] = cfg.top_k ? nlohmann::ordered_json(*cfg.top_k) : nlohmann::ordered_json(nullptr);
    j["jobs"] = cfg.jobs;
    j["repeats"] = cfg.repeats;
    return j;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::kReadError, "cannot open config " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
    }
    return run_config_from_json(j);
}

void save_run_config(const RunConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    out << run_config_to_json(cfg).dump(2) << '\n';
    if (!out) {
        throw Error(ErrorCode::kWriteError, "cannot write config " + path.string());
    }
}

GridSpec parse_grid(const std::string& text) {
    GridSpec grid;
    std::istringstream in(text);
    char c1 = 0;
    char c2 = 0;
    if (!(in >> grid.lo >> c1 >> grid.hi >> c2 >> grid.step) || c1 != ':' || c2 != ':' ||
        !(in >> std::ws).eof()) {
        throw Error(ErrorCode::kParseError, "IoU grid must look like lo:hi:step, got '" + text + "'");
    }
    if (!(grid.lo >= 0.0 && grid.hi <= 1.0 && grid.lo <= grid.hi && grid.step > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "IoU grid needs 0 <= lo <= hi <= 1 and step > 0");
    }
    return grid;
}

}  // namespace relief::cli
