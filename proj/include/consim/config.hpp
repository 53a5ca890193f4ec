#pragma once

// Flat key=value experiment configuration. Keys mirror the config field
// names 1:1; CLI flags carry the same names and override file values.

#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "consim/csv.hpp"
#include "consim/errors.hpp"
#include "consim/experiment.hpp"

namespace consim {

/// Sparse set of overrides collected from a config file or from CLI flags.
/// Later layers win: defaults <- file <- flags.
struct ConfigOverrides {
    std::optional<std::string> topology;  // "ws" | "ba"
    std::optional<std::size_t> n;
    std::optional<std::size_t> n_conspirators;
    std::optional<double> p_interaction;
    std::optional<double> epsilon;
    std::optional<std::size_t> max_steps;
    std::optional<std::uint64_t> master_seed;
    std::optional<std::size_t> ws_k;
    std::optional<double> ws_beta;
    std::optional<std::size_t> ba_m;
    std::optional<std::vector<NodeId>> conspirator_ids;
    std::optional<std::size_t> runs;
    std::optional<std::size_t> workers;
    std::optional<std::size_t> connect_retry_limit;
    std::optional<std::string> output_path;
    std::optional<bool> record_trajectories;

    void set(std::string_view key, std::string_view value) {
        if (key == "topology") {
            if (value != "ws" && value != "ba") {
                throw std::invalid_argument("config: topology must be ws or ba");
            }
            topology = std::string(value);
        } else if (key == "n") {
            n = static_cast<std::size_t>(parse_u64(value));
        } else if (key == "n_conspirators") {
            n_conspirators = static_cast<std::size_t>(parse_u64(value));
        } else if (key == "p_interaction") {
            p_interaction = parse_double(value);
        } else if (key == "epsilon") {
            epsilon = parse_double(value);
        } else if (key == "max_steps") {
            max_steps = static_cast<std::size_t>(parse_u64(value));
        } else if (key == "master_seed") {
            master_seed = parse_u64(value);
        } else if (key == "ws_k") {
            ws_k = static_cast<std::size_t>(parse_u64(value));
        } else if (key == "ws_beta") {
            ws_beta = parse_double(value);
        } else if (key == "ba_m") {
            ba_m = static_cast<std::size_t>(parse_u64(value));
        } else if (key == "conspirator_ids") {
            std::vector<NodeId> ids;
            std::size_t start = 0;
            for (std::size_t i = 0; i <= value.size(); ++i) {
                if (i == value.size() || value[i] == ',') {
                    if (i > start) {
                        ids.push_back(static_cast<NodeId>(parse_u64(value.substr(start, i - start))));
                    }
                    start = i + 1;
                }
            }
            conspirator_ids = std::move(ids);
        } else if (key == "runs") {
            runs = static_cast<std::size_t>(parse_u64(value));
        } else if (key == "workers") {
            workers = static_cast<std::size_t>(parse_u64(value));
        } else if (key == "connect_retry_limit") {
            connect_retry_limit = static_cast<std::size_t>(parse_u64(value));
        } else if (key == "output_path") {
            output_path = std::string(value);
        } else if (key == "record_trajectories") {
            record_trajectories = parse_bool(value);
        } else {
            throw std::invalid_argument("config: unknown key '" + std::string(key) + "'");
        }
    }
};

namespace detail {

inline std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    return text;
}

}  // namespace detail

/// Parses `key = value` lines; blank lines and lines starting with # are
/// skipped.
inline ConfigOverrides load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    ConfigOverrides overrides;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view stripped = detail::trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("config file '" + path + "' line " +
                                        std::to_string(line_no) + ": expected key=value");
        }
        overrides.set(detail::trim(stripped.substr(0, eq)),
                      detail::trim(stripped.substr(eq + 1)));
    }
    return overrides;
}

namespace detail {

inline void apply_overrides(ExperimentConfig& config, std::string& topology_kind,
                            WsParams& ws, BaParams& ba, const ConfigOverrides& o) {
    if (o.topology) topology_kind = *o.topology;
    if (o.n) config.sim.n = *o.n;
    if (o.n_conspirators) config.sim.n_conspirators = *o.n_conspirators;
    if (o.p_interaction) config.sim.p_interaction = *o.p_interaction;
    if (o.epsilon) config.sim.epsilon = *o.epsilon;
    if (o.max_steps) config.sim.max_steps = *o.max_steps;
    if (o.master_seed) config.sim.master_seed = *o.master_seed;
    if (o.ws_k) ws.k = *o.ws_k;
    if (o.ws_beta) ws.beta = *o.ws_beta;
    if (o.ba_m) ba.m = *o.ba_m;
    if (o.conspirator_ids) config.sim.conspirator_ids = *o.conspirator_ids;
    if (o.runs) config.runs = *o.runs;
    if (o.workers) config.workers = *o.workers;
    if (o.connect_retry_limit) config.connect_retry_limit = *o.connect_retry_limit;
    if (o.output_path) config.output_path = *o.output_path;
    if (o.record_trajectories) config.record_trajectories = *o.record_trajectories;
}

}  // namespace detail

/// Defaults, overlaid with the file overrides, overlaid with the flag
/// overrides. The topology params inherit the final n.
inline ExperimentConfig build_experiment_config(const ConfigOverrides& file_overrides,
                                                const ConfigOverrides& flag_overrides) {
    ExperimentConfig config;
    std::string topology_kind = "ws";
    WsParams ws{};
    BaParams ba{};
    detail::apply_overrides(config, topology_kind, ws, ba, file_overrides);
    detail::apply_overrides(config, topology_kind, ws, ba, flag_overrides);
    ws.n = config.sim.n;
    ba.n = config.sim.n;
    if (topology_kind == "ws") {
        config.sim.topology = ws;
    } else {
        config.sim.topology = ba;
    }
    return config;
}

}  // namespace consim
