// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#include "j1j2/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace j1j2 {

namespace {

const std::vector<std::string> kKnownObservables = {
    "all", "energy", "correlations", "discord", "frustration", "fh"};

} // namespace

void RunConfig::validate() const {
    if (n < 4 || n > 16 || n % 2 != 0)
        throw std::invalid_argument("config.n: must be an even integer in [4, 16]");
    if (sweep) {
        if (!(sweep->j2_min <= sweep->j2_max))
            throw std::invalid_argument("config.j2_min: must not exceed j2_max");
        if (sweep->steps < 2)
            throw std::invalid_argument("config.steps: must be >= 2");
    }
    if (levels < 0) throw std::invalid_argument("config.levels: must be >= 0");
    if (format != "csv" && format != "json")
        throw std::invalid_argument("config.format: must be \"csv\" or \"json\"");
    for (const auto& obs : observables)
        if (std::find(kKnownObservables.begin(), kKnownObservables.end(), obs) ==
            kKnownObservables.end())
            throw std::invalid_argument("config.observables: unknown entry \"" + obs +
                                        "\"");
    if (threads < 0) throw std::invalid_argument("config.threads: must be >= 0");
    if (dense_cap < 1) throw std::invalid_argument("config.dense_cap: must be >= 1");
    if (tol_degeneracy <= 0)
        throw std::invalid_argument("config.tol_degeneracy: must be positive");
    if (fd_step <= 0) throw std::invalid_argument("config.fd_step: must be positive");
    if (lanczos_tol <= 0)
        throw std::invalid_argument("config.lanczos_tol: must be positive");
}

SolverOptions RunConfig::solver_options() const {
    SolverOptions opt;
    opt.dense_cap = dense_cap;
    opt.degeneracy_tol = tol_degeneracy;
    opt.lanczos_tol = lanczos_tol;
    opt.seed = seed;
    return opt;
}

SweepOptions RunConfig::sweep_options(int default_levels) const {
    SweepOptions opt;
    opt.n_levels = levels > 0 ? levels : default_levels;
    const bool all = std::find(observables.begin(), observables.end(), "all") !=
                     observables.end();
    const auto wants = [&](const char* name) {
        return all || std::find(observables.begin(), observables.end(), name) !=
                          observables.end();
    };
    opt.with_correlations = wants("correlations");
    opt.with_discord = wants("discord");
    opt.with_frustration = wants("frustration");
    opt.with_fh = wants("fh");
    opt.fd_step = fd_step;
    opt.threads = threads;
    opt.solver = solver_options();
    return opt;
}

std::string config_to_json_string(const RunConfig& config) {
    nlohmann::ordered_json j;
    j["n"] = config.n;
    j["j2"] = config.j2 ? nlohmann::ordered_json(*config.j2)
                        : nlohmann::ordered_json(nullptr);
    if (config.sweep) {
        j["j2_min"] = config.sweep->j2_min;
        j["j2_max"] = config.sweep->j2_max;
        j["steps"] = config.sweep->steps;
    } else {
        j["j2_min"] = nullptr;
        j["j2_max"] = nullptr;
        j["steps"] = nullptr;
    }
    j["levels"] = config.levels;
    j["observables"] = config.observables;
    j["out"] = config.out;
    j["format"] = config.format;
    j["seed"] = config.seed;
    j["threads"] = config.threads;
    j["dense_cap"] = config.dense_cap;
    j["tol_degeneracy"] = config.tol_degeneracy;
    j["fd_step"] = config.fd_step;
    j["lanczos_tol"] = config.lanczos_tol;
    return j.dump(2) + "\n";
}

RunConfig config_from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

    RunConfig config;
    const auto get = [&](const char* key, auto& target) {
        if (!j.contains(key) || j.at(key).is_null()) return;
        try {
            j.at(key).get_to(target);
        } catch (const nlohmann::json::exception&) {
            throw std::invalid_argument(std::string("config.") + key +
                                        ": wrong JSON type");
        }
    };
    get("n", config.n);
    if (j.contains("j2") && !j.at("j2").is_null()) {
        double value = 0.0;
        get("j2", value);
        config.j2 = value;
    }
    if ((j.contains("j2_min") && !j.at("j2_min").is_null()) ||
        (j.contains("j2_max") && !j.at("j2_max").is_null()) ||
        (j.contains("steps") && !j.at("steps").is_null())) {
        SweepRange range;
        get("j2_min", range.j2_min);
        get("j2_max", range.j2_max);
        get("steps", range.steps);
        config.sweep = range;
    }
    get("levels", config.levels);
    get("observables", config.observables);
    get("out", config.out);
    get("format", config.format);
    get("seed", config.seed);
    get("threads", config.threads);
    get("dense_cap", config.dense_cap);
    get("tol_degeneracy", config.tol_degeneracy);
    get("fd_step", config.fd_step);
    get("lanczos_tol", config.lanczos_tol);
    config.validate();
    return config;
}

RunConfig config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return config_from_json_string(text);
}

} // namespace j1j2
