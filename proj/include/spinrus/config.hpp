// Run configuration: JSON with strict schema checking and a canonical
// serialization, so a parsed config re-serializes to a stable form.

#pragma once

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "spinrus/network.hpp"

namespace spinrus {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    NetworkConfig network;
    int target_k = -1;  // -1: default to M/2 at validation time
    double window_lo = 0.0;  // greedy RUS rounds clamp this to the time floor
    double window_hi = std::numbers::pi;
    int grid_points = 4096;
    int max_rounds = 1;
    std::uint64_t trajectories = 1000;
    std::uint64_t master_seed = 1;

    // output paths; empty selects a command-specific default
    std::string output;
    std::string output_trajectories;
    std::string output_summary;
    std::string output_report;

    int resolved_target_k() const { return target_k >= 0 ? target_k : network.m_target / 2; }

    void validate() const {
        try {
            network.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (target_k > network.m_target) {
            throw ConfigError("target_k exceeds m_target");
        }
        if (!(window_hi > window_lo) || window_lo < 0.0) {
            throw ConfigError("time_window must satisfy 0 <= lo < hi");
        }
        if (grid_points < 256) throw ConfigError("grid_points must be at least 256");
        if (max_rounds < 1) throw ConfigError("max_rounds must be at least 1");
        if (trajectories < 1) throw ConfigError("trajectories must be at least 1");
    }
};

namespace detail {

inline const std::set<std::string>& config_keys() {
    static const std::set<std::string> keys{
        "topology",      "n_supplementary", "m_target",     "coupling",
        "anisotropy",    "field_uniform",   "field_center_extra",
        "target_k",      "time_window",     "grid_points",  "max_rounds",
        "trajectories",  "master_seed",     "output",       "output_trajectories",
        "output_summary", "output_report"};
    return keys;
}

}  // namespace detail

inline RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!detail::config_keys().contains(key)) {
            throw ConfigError("unknown config field '" + key + "'");
        }
    }
    RunConfig cfg;
    try {
        if (j.contains("topology")) {
            cfg.network.topology = topology_from_string(j.at("topology").get<std::string>());
        }
        if (j.contains("n_supplementary")) {
            cfg.network.n_supplementary = j.at("n_supplementary").get<int>();
        }
        if (j.contains("m_target")) cfg.network.m_target = j.at("m_target").get<int>();
        if (j.contains("coupling")) cfg.network.coupling = j.at("coupling").get<double>();
        if (j.contains("anisotropy")) cfg.network.anisotropy = j.at("anisotropy").get<double>();
        if (j.contains("field_uniform")) {
            cfg.network.field_uniform = j.at("field_uniform").get<double>();
        }
        if (j.contains("field_center_extra")) {
            cfg.network.field_center_extra = j.at("field_center_extra").get<double>();
        }
        if (j.contains("target_k")) cfg.target_k = j.at("target_k").get<int>();
        if (j.contains("time_window")) {
            const auto& w = j.at("time_window");
            if (!w.is_array() || w.size() != 2) {
                throw ConfigError("time_window must be [lo, hi]");
            }
            cfg.window_lo = w[0].get<double>();
            cfg.window_hi = w[1].get<double>();
        }
        if (j.contains("grid_points")) cfg.grid_points = j.at("grid_points").get<int>();
        if (j.contains("max_rounds")) cfg.max_rounds = j.at("max_rounds").get<int>();
        if (j.contains("trajectories")) {
            cfg.trajectories = j.at("trajectories").get<std::uint64_t>();
        }
        if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
        if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
        if (j.contains("output_trajectories")) {
            cfg.output_trajectories = j.at("output_trajectories").get<std::string>();
        }
        if (j.contains("output_summary")) {
            cfg.output_summary = j.at("output_summary").get<std::string>();
        }
        if (j.contains("output_report")) {
            cfg.output_report = j.at("output_report").get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config value: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

inline nlohmann::json config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["topology"] = to_string(cfg.network.topology);
    j["n_supplementary"] = cfg.network.n_supplementary;
    j["m_target"] = cfg.network.m_target;
    j["coupling"] = cfg.network.coupling;
    j["anisotropy"] = cfg.network.anisotropy;
    j["field_uniform"] = cfg.network.field_uniform;
    j["field_center_extra"] = cfg.network.field_center_extra;
    j["target_k"] = cfg.resolved_target_k();
    j["time_window"] = {cfg.window_lo, cfg.window_hi};
    j["grid_points"] = cfg.grid_points;
    j["max_rounds"] = cfg.max_rounds;
    j["trajectories"] = cfg.trajectories;
    j["master_seed"] = cfg.master_seed;
    if (!cfg.output.empty()) j["output"] = cfg.output;
    if (!cfg.output_trajectories.empty()) j["output_trajectories"] = cfg.output_trajectories;
    if (!cfg.output_summary.empty()) j["output_summary"] = cfg.output_summary;
    if (!cfg.output_report.empty()) j["output_report"] = cfg.output_report;
    return j;
}

inline RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

// Canonical form: keys sorted (nlohmann objects iterate sorted), defaults
// materialized, two-space indentation.
inline std::string canonical_config(const RunConfig& cfg) {
    return config_to_json(cfg).dump(2) + "\n";
}

}  // namespace spinrus
