// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "j1j2/chain.hpp"
#include "j1j2/eigensolver.hpp"
#include "j1j2/measures.hpp"

namespace j1j2 {

/// Observables of one level at one grid point. Correlators are the
/// per-component values <sigma_i,alpha sigma_j,alpha>; unevaluated entries
/// stay NaN and serialize as NA.
struct LevelObservables {
    static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

    double energy = kUnset;
    int degeneracy = 0;
    double c_nn = kUnset, c_nnn = kUnset;
    double dg_nn = kUnset, dg_nnn = kUnset;
    double qd_nn = kUnset, qd_nnn = kUnset;
    double sl_nn = kUnset;
    double f_nn = kUnset, f_nnn = kUnset;
    double e1_nn = kUnset, e1_nnn = kUnset;
    double total_f = kUnset;
    double exe = kUnset;
    // finite-difference correlators from the energy stencil; invalid near
    // kinks (the one-sided derivative there is the signal, not noise)
    double fh_c_nn = kUnset, fh_c_nnn = kUnset;
    bool fh_valid = false;
};

struct SweepRow {
    double j2 = 0.0;
    std::vector<LevelObservables> levels;
    bool crossing = false;  // degenerate level-crossing merged at this grid point
    bool near_kink = false; // within the stencil guard band of a detected kink
};

struct SweepError {
    double j2;
    std::string message;
};

struct SweepOptions {
    int n_levels = 2;
    bool with_correlations = true; // c, dg, sl columns
    bool with_discord = true;      // qd columns
    bool with_frustration = true;  // f, e1, total_f, exe columns
    bool with_fh = true;           // finite-difference correlator columns
    double fd_step = 1e-4;
    int threads = 0; // 0 = hardware concurrency
    SolverOptions solver;
    CcOptions cc;
};

struct SweepTable {
    int n_sites = 0;
    double j2_min = 0.0, j2_max = 0.0;
    int steps = 0;
    SweepOptions options;
    std::vector<SweepRow> rows;
    std::vector<SweepError> errors; // rows that failed keep default values
};

/// Uniform j2 grid sweep; grid points are evaluated independently (and in
/// parallel) and merged in j2 order, so the result does not depend on the
/// scheduling. A failing point is recorded in `errors` and leaves its row
/// blank instead of aborting the sweep.
SweepTable run_sweep(const ChainSpec& spec, double j2_min, double j2_max, int steps,
                     const SweepOptions& opt = {});

/// Full scalar correlators <sigma_i . sigma_j> from a three-point energy
/// stencil: NN from (4/j1)(e - j2 de/dj2), NNN from 4 de/dj2, with the
/// derivative by central difference.
struct FhCorrelators {
    double sigma_nn;
    double sigma_nnn;
};

FhCorrelators fh_correlators(double j2, double e_minus, double e_center, double e_plus,
                             double h, double j1 = 1.0);

/// As above but refuses stencils that straddle a detected kink
/// (throws std::domain_error when |j2 - kink| <= 2h for any kink).
FhCorrelators fh_correlators_checked(double j2, double e_minus, double e_center,
                                     double e_plus, double h,
                                     std::span<const double> kinks, double j1 = 1.0);

enum class CrossingKind { gs_kink, es_crossing, gmqd_jump };

struct CrossingReport {
    CrossingKind kind;
    double j2_location;
    double resolution; // half-width of the location uncertainty
    int level;
    std::string observable; // "energy", "dg_nn" or "dg_nnn"
    double magnitude;       // slope jump (kinks) or value jump (gmqd)
};

struct CrossingThresholds {
    double kink_floor = 1e-7;        // absolute floor on |second difference|
    double kink_median_factor = 10.0;
    double jump_floor = 1e-6;        // absolute floor on |adjacent dg difference|
    double jump_median_factor = 10.0;
    double bisect_tol = 1e-10;       // j2 resolution of the refined location
};

/// Scan the table for (a) kinks in the level energies, refined by bisection
/// on the energy difference of the two crossing branches identified through
/// eigenvector-subspace overlap, (b) degeneracy changes of excited levels
/// and (c) jumps in the GMQD columns. Returns an empty list if nothing is
/// found.
std::vector<CrossingReport> detect_crossings(const SweepTable& table,
                                             const CrossingThresholds& thresholds = {});

enum class RefLevel { gs, es1 };

struct AnalyticPoint {
    double energy;
    double dg_nn;
};

/// Closed-form 4-site and 6-site reference energies and NN GMQD. Branch
/// boundaries (0.25, 0.5) take the left branch. The 6-site GMQD uses the
/// form derived from the energy-derivative route, which is the one
/// consistent with exact diagonalization. Throws std::invalid_argument for
/// n outside {4, 6}.
AnalyticPoint analytic_reference(int n, RefLevel level, double j2);

const char* to_string(CrossingKind kind);

} // namespace j1j2
