// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "j1j2/sweep.hpp"

using namespace j1j2;

namespace {

SweepTable quick_sweep(int n, int steps, int n_levels = 2, bool discord = false) {
    SweepOptions opt;
    opt.n_levels = n_levels;
    opt.with_discord = discord;
    return run_sweep(ChainSpec(n, 0.0), 0.0, 1.0, steps, opt);
}

bool has_flagged_crossing(const SweepTable& t, double j2) {
    for (const SweepRow& row : t.rows)
        if (std::abs(row.j2 - j2) < 1e-12) return row.crossing;
    return false;
}

} // namespace

TEST_CASE("4-site sweep reproduces the piecewise GMQD plateaus") {
    const SweepTable t = quick_sweep(4, 21);
    REQUIRE(t.rows.size() == 21);
    for (const SweepRow& row : t.rows) {
        REQUIRE(row.levels.size() == 2);
        if (row.crossing) continue; // merged-mixture rows follow neither branch
        const double dg_gs = row.levels[0].dg_nn;
        if (row.j2 < 0.5)
            CHECK(dg_gs == doctest::Approx(2.0 / 9.0).epsilon(1e-10));
        else if (row.j2 > 0.5)
            CHECK(std::abs(dg_gs) <= 1e-10);
        const double dg_es = row.levels[1].dg_nn;
        if (row.j2 < 0.25)
            CHECK(dg_es == doctest::Approx(1.0 / 18.0).epsilon(1e-10));
        else if (row.j2 > 0.25 && row.j2 < 0.5)
            CHECK(std::abs(dg_es) <= 1e-10);
        else if (row.j2 > 0.5)
            CHECK(dg_es == doctest::Approx(2.0 / 9.0).epsilon(1e-10));
    }
    CHECK(has_flagged_crossing(t, 0.5));
    CHECK(has_flagged_crossing(t, 0.25)); // first-excited merge point
}

TEST_CASE("6-site sweep matches the closed-form reference") {
    const SweepTable t = quick_sweep(6, 41);
    CHECK(t.rows.front().levels[0].energy ==
          doctest::Approx(-2.802775637731995).epsilon(1e-12));
    for (const SweepRow& row : t.rows) {
        // merged-crossing rows follow the equal mixture, not either branch
        if (row.crossing) continue;
        for (int level = 0; level < 2; ++level) {
            const AnalyticPoint ref = analytic_reference(
                6, level == 0 ? RefLevel::gs : RefLevel::es1, row.j2);
            CHECK(std::abs(row.levels[level].energy - ref.energy) <= 1e-9);
            CHECK(std::abs(row.levels[level].dg_nn - ref.dg_nn) <= 1e-9);
        }
    }
}

TEST_CASE("4-site sweep matches the closed-form reference") {
    const SweepTable t = quick_sweep(4, 41);
    for (const SweepRow& row : t.rows) {
        // merged-crossing rows follow the equal mixture, not either branch
        if (row.crossing) continue;
        for (int level = 0; level < 2; ++level) {
            const AnalyticPoint ref = analytic_reference(
                4, level == 0 ? RefLevel::gs : RefLevel::es1, row.j2);
            CHECK(std::abs(row.levels[level].energy - ref.energy) <= 1e-9);
            CHECK(std::abs(row.levels[level].dg_nn - ref.dg_nn) <= 1e-9);
        }
    }
}

TEST_CASE("stencil correlators recover affine energies exactly") {
    // e(j2) = a + b j2 sampled exactly: the central difference is exact
    const double a = -0.37, b = 0.21, j2 = 0.3, h = 1e-4;
    const FhCorrelators fh =
        fh_correlators(j2, a + b * (j2 - h), a + b * j2, a + b * (j2 + h), h);
    CHECK(fh.sigma_nnn == doctest::Approx(4.0 * b).epsilon(1e-10));
    CHECK(fh.sigma_nn == doctest::Approx(4.0 * (a + b * j2 - j2 * b)).epsilon(1e-10));
}

TEST_CASE("stencil correlators on the 4-site closed-form branches") {
    // left branch: e = (-2 + j2)/4, slope 1/4
    const auto e = [](double j2) { return (-2.0 + j2) / 4.0; };
    const double h = 1e-4;
    const FhCorrelators fh = fh_correlators(0.2, e(0.2 - h), e(0.2), e(0.2 + h), h);
    CHECK(fh.sigma_nn == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(fh.sigma_nnn == doctest::Approx(1.0).epsilon(1e-9));
    // right branch: e = -3 j2 / 4 gives a vanishing NN correlator
    const auto er = [](double j2) { return -3.0 * j2 / 4.0; };
    const FhCorrelators fhr = fh_correlators(0.8, er(0.8 - h), er(0.8), er(0.8 + h), h);
    CHECK(std::abs(fhr.sigma_nn) <= 1e-9);
}

TEST_CASE("kink-guarded stencil refuses straddling inputs") {
    const std::vector<double> kinks = {0.5};
    CHECK_THROWS_AS(
        fh_correlators_checked(0.50005, -0.5, -0.5, -0.5, 1e-4, kinks),
        std::domain_error);
    CHECK_NOTHROW(fh_correlators_checked(0.6, -0.5, -0.5, -0.5, 1e-4, kinks));
    CHECK_THROWS_AS(fh_correlators(0.3, 0, 0, 0, -1e-4), std::invalid_argument);
}

TEST_CASE("finite-difference columns agree with the reduced-state correlators") {
    for (int n : {4, 6}) {
        const SweepTable t = quick_sweep(n, 21);
        int checked = 0;
        for (const SweepRow& row : t.rows) {
            for (const LevelObservables& obs : row.levels) {
                if (!obs.fh_valid) continue;
                ++checked;
                CHECK(std::abs(obs.fh_c_nn - obs.c_nn) <= 1e-5);
                CHECK(std::abs(obs.fh_c_nnn - obs.c_nnn) <= 1e-5);
            }
            if (row.near_kink)
                for (const LevelObservables& obs : row.levels) CHECK_FALSE(obs.fh_valid);
        }
        CHECK(checked > 20); // most rows carry valid stencil columns
    }
}

TEST_CASE("crossing detection on the 4-site table") {
    const SweepTable t = quick_sweep(4, 41);
    const std::vector<CrossingReport> reports = detect_crossings(t);
    bool gs_at_half = false, es_quarter = false, es_half = false, jump_gs = false;
    for (const CrossingReport& r : reports) {
        if (r.kind == CrossingKind::gs_kink && std::abs(r.j2_location - 0.5) <= 1e-6)
            gs_at_half = true;
        if (r.kind == CrossingKind::es_crossing && std::abs(r.j2_location - 0.25) <= 1e-6)
            es_quarter = true;
        if (r.kind == CrossingKind::es_crossing && std::abs(r.j2_location - 0.5) <= 1e-6)
            es_half = true;
        if (r.kind == CrossingKind::gmqd_jump && r.level == 0 &&
            r.observable == "dg_nn" && std::abs(r.j2_location - 0.5) <= 0.025)
            jump_gs = true;
    }
    CHECK(gs_at_half);
    CHECK(es_quarter);
    CHECK(es_half);
    CHECK(jump_gs);
}

TEST_CASE("crossing detection on the 6-site table") {
    const SweepTable t = quick_sweep(6, 41);
    const std::vector<CrossingReport> reports = detect_crossings(t);
    bool gs_at_half = false;
    for (const CrossingReport& r : reports)
        if (r.kind == CrossingKind::gs_kink && std::abs(r.j2_location - 0.5) <= 1e-6)
            gs_at_half = true;
    CHECK(gs_at_half);
}

TEST_CASE("sweeps are deterministic") {
    const SweepTable a = quick_sweep(6, 11, 2, true);
    const SweepTable b = quick_sweep(6, 11, 2, true);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t t = 0; t < a.rows.size(); ++t) {
        CHECK(a.rows[t].j2 == b.rows[t].j2);
        for (std::size_t l = 0; l < a.rows[t].levels.size(); ++l) {
            const LevelObservables& x = a.rows[t].levels[l];
            const LevelObservables& y = b.rows[t].levels[l];
            CHECK(x.energy == y.energy); // bit identical
            CHECK(x.dg_nn == y.dg_nn);
            CHECK(x.qd_nn == y.qd_nn);
            CHECK(x.f_nnn == y.f_nnn);
        }
    }
}

TEST_CASE("analytic reference values and validation") {
    const AnalyticPoint a = analytic_reference(4, RefLevel::gs, 0.3);
    CHECK(a.energy == doctest::Approx(-1.7));
    CHECK(a.dg_nn == doctest::Approx(2.0 / 9.0));
    const AnalyticPoint b = analytic_reference(6, RefLevel::gs, 0.7);
    CHECK(b.energy == doctest::Approx(-2.55));
    CHECK(b.dg_nn == doctest::Approx(1.0 / 18.0));
    const AnalyticPoint c = analytic_reference(6, RefLevel::es1, 0.1);
    CHECK(c.energy == doctest::Approx(-2.011187420807834).epsilon(1e-12));
    CHECK_THROWS_AS(analytic_reference(8, RefLevel::gs, 0.3), std::invalid_argument);
}

TEST_CASE("sweep argument validation and observable filters") {
    CHECK_THROWS_AS(run_sweep(ChainSpec(4, 0.0), 0.0, 1.0, 1, {}), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(ChainSpec(4, 0.0), 1.0, 0.0, 5, {}), std::invalid_argument);
    SweepOptions energy_only;
    energy_only.with_correlations = false;
    energy_only.with_discord = false;
    energy_only.with_frustration = false;
    energy_only.with_fh = false;
    const SweepTable t = run_sweep(ChainSpec(4, 0.0), 0.0, 1.0, 5, energy_only);
    CHECK(std::isfinite(t.rows[0].levels[0].energy));
    CHECK(std::isnan(t.rows[0].levels[0].dg_nn));
    CHECK(std::isnan(t.rows[0].levels[0].qd_nn));
    CHECK(std::isnan(t.rows[0].levels[0].f_nn));
}

TEST_CASE("excited-level observables satisfy the shared relations") {
    const SweepTable t = quick_sweep(6, 21);
    for (const SweepRow& row : t.rows) {
        if (row.crossing) continue;
        for (const LevelObservables& obs : row.levels) {
            // f = 3/4 + (3/4) c and the nonlinear discord relation
            CHECK(std::abs(obs.f_nn - (0.75 + 0.75 * obs.c_nn)) <= 1e-10);
            CHECK(std::abs(obs.f_nnn - (0.75 + 0.75 * obs.c_nnn)) <= 1e-10);
            CHECK(std::abs(obs.dg_nn -
                           (8.0 / 9.0) * (obs.f_nn - 0.75) * (obs.f_nn - 0.75)) <= 1e-9);
            CHECK(std::abs(obs.total_f - 0.5 * (obs.f_nn + obs.f_nnn)) <= 1e-12);
        }
    }
}
