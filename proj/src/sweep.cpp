// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#include "j1j2/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "j1j2/frustration.hpp"
#include "j1j2/reduced_state.hpp"
#include "parallel.hpp"

namespace j1j2 {

namespace {

double grid_point(double j2_min, double j2_max, int steps, int t) {
    return j2_min + (j2_max - j2_min) * static_cast<double>(t) /
                        static_cast<double>(steps - 1);
}

LevelObservables level_observables(const SpectrumLevel& level, const ChainSpec& spec,
                                   const SweepOptions& opt) {
    LevelObservables obs;
    obs.energy = level.energy;
    obs.degeneracy = level.degeneracy;
    if (!(opt.with_correlations || opt.with_discord || opt.with_frustration)) return obs;

    const TwoSiteRDM rdm_nn = two_site_rdm(level, 0, 1);
    const TwoSiteRDM rdm_nnn = two_site_rdm(level, 0, 2);
    if (opt.with_correlations) {
        obs.c_nn = correlators(rdm_nn).c_scalar;
        obs.c_nnn = correlators(rdm_nnn).c_scalar;
        obs.dg_nn = gmqd_general(bloch_form(rdm_nn));
        obs.dg_nnn = gmqd_general(bloch_form(rdm_nnn));
        obs.sl_nn = linear_entropy(rdm_nn);
    }
    if (opt.with_discord) {
        obs.qd_nn = quantum_discord(rdm_nn, opt.cc).discord;
        obs.qd_nnn = quantum_discord(rdm_nnn, opt.cc).discord;
    }
    if (opt.with_frustration) {
        obs.f_nn = frustration_measure(rdm_nn);
        obs.f_nnn = frustration_measure(rdm_nnn);
        obs.e1_nn = frustration_lower_bound(rdm_nn);
        obs.e1_nnn = frustration_lower_bound(rdm_nnn);
        obs.total_f = total_frustration(obs.f_nn, obs.f_nnn);
        obs.exe = exe_closed(level.energy / spec.n_sites);
    }
    return obs;
}

// |second differences| of one level's energy column; empty slots where a
// neighbor row failed.
std::vector<double> second_differences(const SweepTable& table, int level) {
    std::vector<double> d2(table.rows.size(), 0.0);
    for (std::size_t t = 1; t + 1 < table.rows.size(); ++t) {
        const auto& lo = table.rows[t - 1].levels;
        const auto& mid = table.rows[t].levels;
        const auto& hi = table.rows[t + 1].levels;
        if (lo.empty() || mid.empty() || hi.empty()) continue;
        const std::size_t l = static_cast<std::size_t>(level);
        d2[t] = std::abs(hi[l].energy - 2.0 * mid[l].energy + lo[l].energy);
    }
    return d2;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    return v[mid];
}

struct KinkCandidate {
    int peak;    // grid index of the strongest second difference
    int lo, hi;  // bracketing grid indices
    double magnitude;
};

// grid indices whose |second difference| stands out of the smooth background
std::vector<KinkCandidate> kink_candidates(const SweepTable& table, int level,
                                           const CrossingThresholds& th) {
    const std::vector<double> d2 = second_differences(table, level);
    std::vector<double> interior;
    for (std::size_t i = 1; i + 1 < d2.size(); ++i) interior.push_back(d2[i]);
    const double threshold =
        std::max(th.kink_floor, th.kink_median_factor * median_of(interior));

    std::vector<KinkCandidate> out;
    std::size_t t = 1;
    while (t + 1 < d2.size()) {
        if (d2[t] <= threshold) {
            ++t;
            continue;
        }
        std::size_t end = t;
        std::size_t peak = t;
        while (end + 1 < d2.size() && d2[end] > threshold) {
            if (d2[end] > d2[peak]) peak = end;
            ++end;
        }
        out.push_back({static_cast<int>(peak), static_cast<int>(t) - 1,
                       static_cast<int>(end), d2[peak]});
        t = end + 1;
    }
    return out;
}

} // namespace

SweepTable run_sweep(const ChainSpec& spec, double j2_min, double j2_max, int steps,
                     const SweepOptions& opt) {
    if (steps < 2) throw std::invalid_argument("run_sweep: steps must be >= 2");
    if (!(j2_min <= j2_max))
        throw std::invalid_argument("run_sweep: j2_min must not exceed j2_max");
    if (opt.n_levels < 1) throw std::invalid_argument("run_sweep: n_levels must be >= 1");

    SweepTable table;
    table.n_sites = spec.n_sites;
    table.j2_min = j2_min;
    table.j2_max = j2_max;
    table.steps = steps;
    table.options = opt;
    table.rows.resize(static_cast<std::size_t>(steps));

    std::vector<std::string> point_errors(static_cast<std::size_t>(steps));

    detail::parallel_for(steps, opt.threads, [&](int t) {
        SweepRow& row = table.rows[static_cast<std::size_t>(t)];
        row.j2 = grid_point(j2_min, j2_max, steps, t);
        try {
            const ChainSpec point_spec(spec.n_sites, row.j2, spec.j1);
            const LowSpectrum spectrum =
                assemble_low_spectrum(point_spec, opt.n_levels, opt.solver);
            row.levels.reserve(static_cast<std::size_t>(opt.n_levels));
            for (const SpectrumLevel& level : spectrum.levels)
                row.levels.push_back(level_observables(level, point_spec, opt));
        } catch (const std::exception& e) {
            point_errors[static_cast<std::size_t>(t)] = e.what();
            row.levels.clear();
        }
    });

    for (int t = 0; t < steps; ++t)
        if (!point_errors[static_cast<std::size_t>(t)].empty())
            table.errors.push_back(
                {table.rows[static_cast<std::size_t>(t)].j2,
                 point_errors[static_cast<std::size_t>(t)]});

    // flag on-grid degenerate crossings: a level whose degeneracy strictly
    // exceeds its value at j2 +- eps was merged from branches that split
    // infinitesimally away. Candidate rows are those whose degeneracy
    // pattern differs from a neighbor, plus the two boundary rows.
    {
        const double eps = std::max(opt.fd_step, 1e-6);
        std::vector<int> suspects;
        const auto degeneracies_differ = [&](std::size_t a, std::size_t b) {
            const auto& la = table.rows[a].levels;
            const auto& lb = table.rows[b].levels;
            if (la.size() != lb.size()) return true;
            for (std::size_t l = 0; l < la.size(); ++l)
                if (la[l].degeneracy != lb[l].degeneracy) return true;
            return false;
        };
        for (std::size_t t = 0; t < table.rows.size(); ++t) {
            if (table.rows[t].levels.empty()) continue;
            const bool boundary = t == 0 || t + 1 == table.rows.size();
            const bool edge = (t > 0 && degeneracies_differ(t, t - 1)) ||
                              (t + 1 < table.rows.size() && degeneracies_differ(t, t + 1));
            if (boundary || edge) suspects.push_back(static_cast<int>(t));
        }
        SolverOptions probe_solver = opt.solver;
        probe_solver.keep_eigenvectors = false;
        detail::parallel_for(static_cast<int>(suspects.size()), opt.threads, [&](int s) {
            SweepRow& row = table.rows[static_cast<std::size_t>(suspects[s])];
            try {
                const ChainSpec minus(spec.n_sites, row.j2 - eps, spec.j1);
                const ChainSpec plus(spec.n_sites, row.j2 + eps, spec.j1);
                const LowSpectrum sm =
                    assemble_low_spectrum(minus, opt.n_levels, probe_solver);
                const LowSpectrum sp =
                    assemble_low_spectrum(plus, opt.n_levels, probe_solver);
                for (std::size_t l = 0; l < row.levels.size(); ++l)
                    if (row.levels[l].degeneracy > sm.levels[l].degeneracy &&
                        row.levels[l].degeneracy > sp.levels[l].degeneracy)
                        row.crossing = true;
            } catch (const std::exception&) {
                // probe failed: leave the row unflagged
            }
        });
    }

    if (!opt.with_fh) return table;

    // locate kinks at grid resolution, then fill the finite-difference
    // correlator columns everywhere the stencil is safely one-branch
    const double step = (j2_max - j2_min) / static_cast<double>(steps - 1);
    std::vector<double> kink_positions;
    CrossingThresholds th;
    for (int level = 0; level < opt.n_levels; ++level)
        for (const KinkCandidate& k : kink_candidates(table, level, th))
            kink_positions.push_back(table.rows[static_cast<std::size_t>(k.peak)].j2);

    const double guard = step + 2.0 * opt.fd_step;
    for (SweepRow& row : table.rows)
        for (double kink : kink_positions)
            if (std::abs(row.j2 - kink) <= guard) row.near_kink = true;

    detail::parallel_for(steps, opt.threads, [&](int t) {
        SweepRow& row = table.rows[static_cast<std::size_t>(t)];
        if (row.near_kink || row.crossing || row.levels.empty()) return;
        try {
            SolverOptions stencil_solver = opt.solver;
            stencil_solver.keep_eigenvectors = false;
            const ChainSpec minus(spec.n_sites, row.j2 - opt.fd_step, spec.j1);
            const ChainSpec plus(spec.n_sites, row.j2 + opt.fd_step, spec.j1);
            const LowSpectrum sm = assemble_low_spectrum(minus, opt.n_levels, stencil_solver);
            const LowSpectrum sp = assemble_low_spectrum(plus, opt.n_levels, stencil_solver);
            const double n = spec.n_sites;
            for (std::size_t l = 0; l < row.levels.size(); ++l) {
                const FhCorrelators fh = fh_correlators(
                    row.j2, sm.levels[l].energy / n, row.levels[l].energy / n,
                    sp.levels[l].energy / n, opt.fd_step, spec.j1);
                row.levels[l].fh_c_nn = fh.sigma_nn / 3.0;
                row.levels[l].fh_c_nnn = fh.sigma_nnn / 3.0;
                row.levels[l].fh_valid = true;
            }
        } catch (const std::exception&) {
            // stencil solve failed; leave the columns invalid
            for (auto& level : row.levels) level.fh_valid = false;
        }
    });

    return table;
}

FhCorrelators fh_correlators(double j2, double e_minus, double e_center, double e_plus,
                             double h, double j1) {
    if (h <= 0.0) throw std::invalid_argument("fh_correlators: h must be positive");
    const double de = (e_plus - e_minus) / (2.0 * h);
    return {(4.0 / j1) * (e_center - j2 * de), 4.0 * de};
}

FhCorrelators fh_correlators_checked(double j2, double e_minus, double e_center,
                                     double e_plus, double h,
                                     std::span<const double> kinks, double j1) {
    for (double kink : kinks)
        if (std::abs(j2 - kink) <= 2.0 * h)
            throw std::domain_error("fh_correlators: stencil straddles the kink at j2 = " +
                                    std::to_string(kink));
    return fh_correlators(j2, e_minus, e_center, e_plus, h, j1);
}

namespace {

// total squared overlap between two orthonormal column sets, normalized so a
// matching branch scores ~1 and an orthogonal one ~0
double subspace_overlap(const std::vector<Eigen::VectorXd>& a,
                        const std::vector<Eigen::VectorXd>& b) {
    double sum = 0.0;
    for (const auto& u : a)
        for (const auto& v : b) {
            const double o = u.dot(v);
            sum += o * o;
        }
    return sum / static_cast<double>(std::min(a.size(), b.size()));
}

struct BranchProbe {
    double energy;
    int level_index;
    double score;
};

BranchProbe match_branch(const LowSpectrum& spectrum,
                         const std::vector<Eigen::VectorXd>& reference) {
    BranchProbe best{0.0, -1, -1.0};
    for (std::size_t l = 0; l < spectrum.levels.size(); ++l) {
        const double score = subspace_overlap(reference, spectrum.levels[l].eigenvectors);
        if (score > best.score)
            best = {spectrum.levels[l].energy, static_cast<int>(l), score};
    }
    return best;
}

// Bisection on the energy difference of the two branches that exchange order
// inside [j2_lo, j2_hi]. Branch identity is carried across probe points by
// maximal eigenvector-subspace overlap, so a genuine crossing is
// distinguished from an avoided one (which never changes sign).
struct RefineResult {
    double location;
    double resolution;
    bool refined;
};

RefineResult refine_crossing(const SweepTable& table, int level, double j2_lo,
                             double j2_hi, const CrossingThresholds& th) {
    const int n_probe = level + 2;
    SolverOptions solver = table.options.solver;
    solver.keep_eigenvectors = true;

    const auto solve = [&](double j2) {
        const ChainSpec spec(table.n_sites, j2);
        return assemble_low_spectrum(spec, n_probe, solver);
    };

    LowSpectrum lo = solve(j2_lo);
    LowSpectrum hi = solve(j2_hi);
    const std::size_t l = static_cast<std::size_t>(level);
    std::vector<Eigen::VectorXd> branch_a = lo.levels[l].eigenvectors;
    std::vector<Eigen::VectorXd> branch_b = hi.levels[l].eigenvectors;

    // same branch on both sides: a kink without an exchange cannot be
    // bisected, report the grid-resolution location instead
    if (subspace_overlap(branch_a, branch_b) > 0.5)
        return {0.5 * (j2_lo + j2_hi), 0.5 * (j2_hi - j2_lo), false};

    double f_lo = lo.levels[l].energy - match_branch(lo, branch_b).energy;
    double f_hi = match_branch(hi, branch_a).energy - hi.levels[l].energy;
    if (!(f_lo < 0.0) || !(f_hi > 0.0))
        return {0.5 * (j2_lo + j2_hi), 0.5 * (j2_hi - j2_lo), false};

    double a = j2_lo, b = j2_hi;
    for (int iter = 0; iter < 64 && b - a > th.bisect_tol; ++iter) {
        const double mid = 0.5 * (a + b);
        const LowSpectrum probe = solve(mid);
        const BranchProbe pa = match_branch(probe, branch_a);
        const BranchProbe pb = match_branch(probe, branch_b);
        if (pa.level_index == pb.level_index) {
            // both branches landed in one merged degenerate level: the
            // crossing sits at this probe point to within the grouping tol
            return {mid, th.bisect_tol, true};
        }
        const double f = pa.energy - pb.energy;
        if (f < 0.0) {
            a = mid;
            branch_a = probe.levels[static_cast<std::size_t>(pa.level_index)].eigenvectors;
        } else {
            b = mid;
            branch_b = probe.levels[static_cast<std::size_t>(pb.level_index)].eigenvectors;
        }
    }
    return {0.5 * (a + b), 0.5 * (b - a), true};
}

// one-sided slope difference across the refined location
double slope_jump(const SweepTable& table, int level, const KinkCandidate& k) {
    const auto& rows = table.rows;
    const std::size_t peak = static_cast<std::size_t>(k.peak);
    const std::size_t l = static_cast<std::size_t>(level);
    if (peak == 0 || peak + 1 >= rows.size()) return k.magnitude;
    if (rows[peak - 1].levels.size() <= l || rows[peak].levels.size() <= l ||
        rows[peak + 1].levels.size() <= l)
        return k.magnitude;
    const double step = rows[peak].j2 - rows[peak - 1].j2;
    const double left = (rows[peak].levels[l].energy - rows[peak - 1].levels[l].energy) / step;
    const double right = (rows[peak + 1].levels[l].energy - rows[peak].levels[l].energy) / step;
    return std::abs(right - left);
}

} // namespace

std::vector<CrossingReport> detect_crossings(const SweepTable& table,
                                             const CrossingThresholds& th) {
    std::vector<CrossingReport> reports;
    if (table.rows.size() < 3) return reports;
    const double step = (table.j2_max - table.j2_min) / (table.steps - 1);

    for (int level = 0; level < table.options.n_levels; ++level) {
        const std::size_t l = static_cast<std::size_t>(level);

        // (a) energy kinks
        std::vector<std::pair<int, int>> brackets;
        std::vector<double> magnitudes;
        for (const KinkCandidate& k : kink_candidates(table, level, th)) {
            brackets.emplace_back(k.lo, k.hi);
            magnitudes.push_back(slope_jump(table, level, k));
        }

        // (b) degeneracy changes of excited levels, merged into an existing
        // bracket when adjacent to one
        if (level >= 1) {
            for (std::size_t t = 0; t + 1 < table.rows.size(); ++t) {
                const auto& cur = table.rows[t].levels;
                const auto& next = table.rows[t + 1].levels;
                if (cur.size() <= l || next.size() <= l) continue;
                if (cur[l].degeneracy == next[l].degeneracy) continue;
                bool covered = false;
                for (auto& br : brackets)
                    if (static_cast<int>(t) >= br.first - 1 &&
                        static_cast<int>(t) + 1 <= br.second + 1) {
                        br.first = std::min(br.first, static_cast<int>(t));
                        br.second = std::max(br.second, static_cast<int>(t) + 1);
                        covered = true;
                        break;
                    }
                if (!covered) {
                    brackets.emplace_back(static_cast<int>(t), static_cast<int>(t) + 1);
                    magnitudes.push_back(
                        std::abs(next[l].energy - cur[l].energy) / step);
                }
            }
        }

        for (std::size_t c = 0; c < brackets.size(); ++c) {
            const int lo_idx = std::max(0, brackets[c].first);
            const int hi_idx =
                std::min(static_cast<int>(table.rows.size()) - 1, brackets[c].second);
            const double j2_lo = table.rows[static_cast<std::size_t>(lo_idx)].j2;
            const double j2_hi = table.rows[static_cast<std::size_t>(hi_idx)].j2;
            const RefineResult r = refine_crossing(table, level, j2_lo, j2_hi, th);
            reports.push_back({level == 0 ? CrossingKind::gs_kink : CrossingKind::es_crossing,
                               r.location, r.resolution, level, "energy", magnitudes[c]});
        }

        // (c) jumps in the GMQD columns
        for (const char* column : {"dg_nn", "dg_nnn"}) {
            const bool nn = std::string(column) == "dg_nn";
            std::vector<double> diffs;
            for (std::size_t t = 0; t + 1 < table.rows.size(); ++t) {
                const auto& cur = table.rows[t].levels;
                const auto& next = table.rows[t + 1].levels;
                if (cur.size() <= l || next.size() <= l) {
                    diffs.push_back(0.0);
                    continue;
                }
                const double va = nn ? cur[l].dg_nn : cur[l].dg_nnn;
                const double vb = nn ? next[l].dg_nn : next[l].dg_nnn;
                diffs.push_back(std::isfinite(va) && std::isfinite(vb) ? std::abs(vb - va)
                                                                       : 0.0);
            }
            const double threshold =
                std::max(th.jump_floor, th.jump_median_factor * median_of(diffs));
            std::size_t t = 0;
            while (t < diffs.size()) {
                if (diffs[t] <= threshold) {
                    ++t;
                    continue;
                }
                std::size_t peak = t;
                std::size_t end = t;
                double total = 0.0;
                while (end < diffs.size() && diffs[end] > threshold) {
                    if (diffs[end] > diffs[peak]) peak = end;
                    total += diffs[end];
                    ++end;
                }
                const double location =
                    0.5 * (table.rows[peak].j2 + table.rows[peak + 1].j2);
                reports.push_back({CrossingKind::gmqd_jump, location, 0.5 * step, level,
                                   column, total});
                t = end;
            }
        }
    }

    // collapse duplicate sightings of one crossing (e.g. a kink bracket and a
    // degeneracy-change bracket refined to the same point)
    std::vector<CrossingReport> unique;
    for (const CrossingReport& r : reports) {
        bool duplicate = false;
        for (CrossingReport& u : unique) {
            if (u.kind == r.kind && u.level == r.level && u.observable == r.observable &&
                std::abs(u.j2_location - r.j2_location) <= step) {
                if (r.resolution < u.resolution) u = r;
                duplicate = true;
                break;
            }
        }
        if (!duplicate) unique.push_back(r);
    }
    return unique;
}

AnalyticPoint analytic_reference(int n, RefLevel level, double j2) {
    const auto dg_from_branch = [](double num, double rad) {
        // (1/162) ((num)/sqrt(rad) + 2)^2 is the energy-derivative route for
        // the 6-site radical branches
        const double x = num / std::sqrt(rad) + 2.0;
        return x * x / 162.0;
    };
    if (n == 4) {
        if (level == RefLevel::gs) {
            if (j2 <= 0.5) return {-2.0 + j2, 2.0 / 9.0};
            return {-3.0 * j2, 0.0};
        }
        if (j2 <= 0.25) return {-1.0 + j2, 1.0 / 18.0};
        if (j2 <= 0.5) return {-3.0 * j2, 0.0};
        return {-2.0 + j2, 2.0 / 9.0};
    }
    if (n == 6) {
        const double om2 = 9.0 * j2 * j2 - 18.0 * j2 + 13.0;
        const double lam2 = 9.0 * j2 * j2 - 10.0 * j2 + 5.0;
        if (level == RefLevel::gs) {
            if (j2 <= 0.5)
                return {-0.5 * std::sqrt(om2) - 1.0, dg_from_branch(13.0 - 9.0 * j2, om2)};
            return {-1.5 * (1.0 + j2), 1.0 / 18.0};
        }
        if (j2 <= 0.25)
            return {-0.5 * std::sqrt(lam2) - 1.0, dg_from_branch(5.0 - 5.0 * j2, lam2)};
        if (j2 <= 0.5) return {-1.5 * (1.0 + j2), 1.0 / 18.0};
        return {-0.5 * std::sqrt(om2) - 1.0, dg_from_branch(13.0 - 9.0 * j2, om2)};
    }
    throw std::invalid_argument("analytic_reference: closed forms exist only for n = 4, 6");
}

const char* to_string(CrossingKind kind) {
    switch (kind) {
        case CrossingKind::gs_kink: return "gs_kink";
        case CrossingKind::es_crossing: return "es_crossing";
        case CrossingKind::gmqd_jump: return "gmqd_jump";
    }
    return "unknown";
}

} // namespace j1j2
