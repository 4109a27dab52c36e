// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "j1j2/sweep.hpp"

namespace j1j2 {

struct SweepRange {
    double j2_min = 0.0;
    double j2_max = 1.0;
    int steps = 201;
};

/// One run's knobs: model, grid, requested observables and solver overrides.
/// Serializes to a canonical JSON form (fixed key order, every key present)
/// so that serialize(parse(serialize(c))) is byte-identical.
struct RunConfig {
    int n = 4;
    std::optional<double> j2;        // single-point commands
    std::optional<SweepRange> sweep; // sweep commands
    int levels = 0;                  // 0 = command default
    std::vector<std::string> observables = {"all"};
    std::string out;                 // empty = stdout
    std::string format = "csv";     // "csv" or "json"
    std::uint64_t seed = 0;
    int threads = 0;                 // 0 = hardware concurrency
    int dense_cap = 4096;
    double tol_degeneracy = 1e-9;
    double fd_step = 1e-4;
    double lanczos_tol = 1e-10;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    SolverOptions solver_options() const;
    SweepOptions sweep_options(int default_levels = 2) const;
};

std::string config_to_json_string(const RunConfig& config);
RunConfig config_from_json_string(const std::string& text);
RunConfig config_from_file(const std::string& path);

} // namespace j1j2
