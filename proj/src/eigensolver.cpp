// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#include "j1j2/eigensolver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "j1j2/basis.hpp"
#include "j1j2/errors.hpp"
#include "j1j2/hamiltonian.hpp"

namespace j1j2 {

EighResult dense_eigh(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("dense_eigh: matrix is not square");
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10)
        throw std::invalid_argument("dense_eigh: matrix not symmetric, max asymmetry " +
                                    std::to_string(asym));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw NumericalError("dense_eigh: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Orthogonalize v against the columns of basis (modified Gram-Schmidt, two
// passes), in place.
void orthogonalize(Eigen::VectorXd& v, const std::vector<Eigen::VectorXd>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) v -= q.dot(v) * q;
}

struct RitzInfo {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors; // of the tridiagonal problem
};

RitzInfo solve_tridiagonal(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                           Eigen::Index m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(alpha.head(m), beta.head(m - 1 > 0 ? m - 1 : 0));
    if (solver.info() != Eigen::Success)
        throw NumericalError("lanczos_lowest: tridiagonal solve failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

} // namespace

EigenPairs lanczos_lowest(const LinearOp& apply, Eigen::Index dim, int k,
                          const LanczosOptions& opt) {
    if (dim < 1) throw std::invalid_argument("lanczos_lowest: dim must be >= 1");
    if (k < 1 || k > dim)
        throw std::invalid_argument("lanczos_lowest: k must be in [1, dim]");

    std::mt19937_64 rng(splitmix64(opt.seed));
    std::normal_distribution<double> gauss;

    std::vector<Eigen::VectorXd> locked;
    std::vector<double> locked_values;
    double best_residual = std::numeric_limits<double>::infinity();

    // per-restart Krylov budget; doubled whenever a restart locks nothing,
    // so stagnation on clustered interior pairs deepens the subspace instead
    // of burning restarts
    Eigen::Index m_budget = opt.max_subspace > 0
                                ? opt.max_subspace
                                : std::max<Eigen::Index>(2 * k + 32, 64);

    for (int restart = 0; restart < opt.max_restarts; ++restart) {
        const int remaining = k - static_cast<int>(locked.size());
        if (remaining <= 0) break;

        Eigen::VectorXd v0(dim);
        for (Eigen::Index i = 0; i < dim; ++i) v0[i] = gauss(rng);
        orthogonalize(v0, locked);
        const double norm0 = v0.norm();
        if (norm0 < 1e-12) continue; // degenerate draw, try again
        v0 /= norm0;

        const Eigen::Index deflated_dim = dim - static_cast<Eigen::Index>(locked.size());
        const Eigen::Index m_max = std::min(m_budget, deflated_dim);

        std::vector<Eigen::VectorXd> krylov{v0};
        Eigen::VectorXd alpha(m_max), beta(m_max);
        Eigen::Index m = 0;
        Eigen::Index next_check = std::min<Eigen::Index>(remaining + 2, m_max);
        bool breakdown = false;
        int converged = 0;

        while (m < m_max) {
            Eigen::VectorXd w = apply(krylov[static_cast<std::size_t>(m)]);
            alpha[m] = krylov[static_cast<std::size_t>(m)].dot(w);
            w -= alpha[m] * krylov[static_cast<std::size_t>(m)];
            if (m > 0) w -= beta[m - 1] * krylov[static_cast<std::size_t>(m - 1)];
            orthogonalize(w, locked); // keep the Krylov space deflated
            orthogonalize(w, krylov); // full reorthogonalization
            beta[m] = w.norm();
            ++m;
            breakdown = beta[m - 1] < 1e-13; // exact invariant subspace
            if (!breakdown && m < m_max)
                krylov.push_back(w / beta[m - 1]);

            const bool at_end = breakdown || m == m_max;
            if (!at_end && m < next_check) continue;
            next_check = m + 16; // tridiagonal solves are O(m^2): keep them sparse
            RitzInfo ritz = solve_tridiagonal(alpha, beta, m);
            converged = 0;
            for (int j = 0; j < std::min<Eigen::Index>(remaining, m); ++j) {
                const double resid =
                    breakdown ? 0.0 : std::abs(beta[m - 1] * ritz.vectors(m - 1, j));
                const double scale = std::max(1.0, std::abs(ritz.values[j]));
                best_residual = std::min(best_residual, resid / scale);
                if (resid <= opt.tol * scale)
                    ++converged;
                else
                    break; // only lock an ascending converged prefix
            }
            if (converged == remaining || at_end) {
                for (int j = 0; j < converged; ++j) {
                    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
                    for (Eigen::Index i = 0; i < m; ++i)
                        y += ritz.vectors(i, j) * krylov[static_cast<std::size_t>(i)];
                    orthogonalize(y, locked);
                    const double norm = y.norm();
                    if (norm < 1e-8) continue; // duplicate of a locked vector
                    locked.push_back(y / norm);
                    locked_values.push_back(ritz.values[j]);
                }
                break;
            }
        }
        if (converged == 0)
            m_budget = std::min<Eigen::Index>(2 * m_budget, dim);
        if (static_cast<int>(locked.size()) >= k) break;
    }

    if (static_cast<int>(locked.size()) < k) {
        std::ostringstream msg;
        msg << "lanczos_lowest: only " << locked.size() << " of " << k
            << " pairs converged within the restart budget (best residual "
            << best_residual << ")";
        throw NumericalError(msg.str());
    }

    std::vector<int> order(locked.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return locked_values[static_cast<std::size_t>(a)] <
                                         locked_values[static_cast<std::size_t>(b)]; });

    EigenPairs out;
    out.values.resize(k);
    out.vectors.resize(dim, k);
    for (int j = 0; j < k; ++j) {
        const auto idx = static_cast<std::size_t>(order[static_cast<std::size_t>(j)]);
        // refresh the Rayleigh quotient and verify the residual once more
        const Eigen::VectorXd hv = apply(locked[idx]);
        const double value = locked[idx].dot(hv);
        const double resid = (hv - value * locked[idx]).norm();
        if (resid > 10 * opt.tol * std::max(1.0, std::abs(value)))
            throw NumericalError("lanczos_lowest: locked pair failed the final residual "
                                 "check, residual " + std::to_string(resid));
        out.values[j] = value;
        out.vectors.col(j) = locked[idx];
    }
    return out;
}

std::uint64_t sector_seed(std::uint64_t user_seed, int n_sites, double j2, int n_up) {
    std::uint64_t j2_bits = 0;
    static_assert(sizeof(j2_bits) == sizeof(j2));
    std::memcpy(&j2_bits, &j2, sizeof(j2));
    std::uint64_t h = splitmix64(user_seed ^ 0x6a09e667f3bcc908ULL);
    h = splitmix64(h ^ static_cast<std::uint64_t>(n_sites));
    h = splitmix64(h ^ j2_bits);
    h = splitmix64(h ^ static_cast<std::uint64_t>(n_up));
    return h;
}

namespace {

struct Candidate {
    double energy;
    int n_up;
    int mirror_of = -1;       // >= 0: vector is the spin flip of candidate #mirror_of
    Eigen::VectorXd vector;   // sector coordinates (empty if not kept)
};

std::uint32_t flip_mask(std::uint32_t m, int n_sites) {
    return ~m & ((1u << n_sites) - 1u);
}

Eigen::VectorXd embed(const Eigen::VectorXd& sector_vec, const SzSectorBasis& basis,
                      int n_sites, bool flipped) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(Eigen::Index(1) << n_sites);
    for (Eigen::Index i = 0; i < basis.size(); ++i) {
        std::uint32_t m = basis.state(i);
        if (flipped) m = flip_mask(m, n_sites);
        full[static_cast<Eigen::Index>(m)] = sector_vec[i];
    }
    return full;
}

} // namespace

LowSpectrum assemble_low_spectrum(const ChainSpec& spec, int n_levels,
                                  const SolverOptions& opt) {
    if (n_levels < 1)
        throw std::invalid_argument("assemble_low_spectrum: n_levels must be >= 1");

    const int n = spec.n_sites;
    const int k_request = opt.k_per_sector > 0 ? opt.k_per_sector : n_levels * (n + 1);

    std::vector<Candidate> candidates;
    std::vector<SzSectorBasis> bases;
    bases.reserve(static_cast<std::size_t>(n) + 1);
    for (int n_up = 0; n_up <= n; ++n_up) bases.emplace_back(n, n_up);

    // truncation horizon: lowest "highest kept energy" over truncated sectors
    double horizon = std::numeric_limits<double>::infinity();

    for (int n_up = 0; n_up <= n / 2; ++n_up) {
        const SzSectorBasis& basis = bases[static_cast<std::size_t>(n_up)];
        SectorOperator op(spec, basis);
        const Eigen::Index dim = op.dim();
        const int k = static_cast<int>(std::min<Eigen::Index>(k_request, dim));

        Eigen::VectorXd values;
        Eigen::MatrixXd vectors;
        bool truncated = false;

        if (dim <= opt.dense_cap) {
            const Eigen::MatrixXd h = op.dense(opt.dense_cap);
            if (opt.keep_eigenvectors) {
                EighResult res = dense_eigh(h);
                const int keep = static_cast<int>(std::min<Eigen::Index>(
                    std::max(k, 8), dim));
                values = res.eigenvalues.head(keep);
                vectors = res.eigenvectors.leftCols(keep);
                truncated = keep < dim;
            } else {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h,
                                                                      Eigen::EigenvaluesOnly);
                if (solver.info() != Eigen::Success)
                    throw NumericalError("assemble_low_spectrum: dense solve failed");
                values = solver.eigenvalues();
            }
        } else {
            LanczosOptions lopt;
            lopt.tol = opt.lanczos_tol;
            lopt.seed = sector_seed(opt.seed, n, spec.j2, n_up);
            EigenPairs pairs = lanczos_lowest(
                [&op](const Eigen::VectorXd& v) { return op.apply(v); }, dim, k, lopt);
            values = pairs.values;
            vectors = pairs.vectors;
            truncated = k < dim;
        }

        if (truncated) horizon = std::min(horizon, values[values.size() - 1]);

        const int kept = static_cast<int>(values.size());
        for (int j = 0; j < kept; ++j) {
            Candidate c;
            c.energy = values[j];
            c.n_up = n_up;
            if (opt.keep_eigenvectors) c.vector = vectors.col(j);
            const int self = static_cast<int>(candidates.size());
            candidates.push_back(std::move(c));
            if (n_up != n - n_up) {
                Candidate mirror;
                mirror.energy = values[j];
                mirror.n_up = n - n_up;
                mirror.mirror_of = self;
                candidates.push_back(std::move(mirror));
            }
        }
    }

    std::vector<int> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return candidates[static_cast<std::size_t>(a)].energy <
               candidates[static_cast<std::size_t>(b)].energy;
    });

    LowSpectrum spectrum;
    spectrum.n_sites = n;
    spectrum.degeneracy_tol = opt.degeneracy_tol;

    std::size_t pos = 0;
    while (pos < order.size() && static_cast<int>(spectrum.levels.size()) < n_levels) {
        std::size_t end = pos + 1;
        double group_max = candidates[static_cast<std::size_t>(order[pos])].energy;
        while (end < order.size()) {
            const double e = candidates[static_cast<std::size_t>(order[end])].energy;
            if (e - group_max > opt.degeneracy_tol * std::max(1.0, std::abs(group_max)))
                break;
            group_max = std::max(group_max, e);
            ++end;
        }

        SpectrumLevel level;
        double sum = 0.0;
        for (std::size_t q = pos; q < end; ++q)
            sum += candidates[static_cast<std::size_t>(order[q])].energy;
        level.energy = sum / static_cast<double>(end - pos);
        level.degeneracy = static_cast<int>(end - pos);

        if (level.energy > horizon - 1e-12)
            throw NumericalError("assemble_low_spectrum: requested level reaches the "
                                 "per-sector truncation horizon; raise k_per_sector");

        for (std::size_t q = pos; q < end; ++q)
            level.sector_tags.push_back(
                candidates[static_cast<std::size_t>(order[q])].n_up);

        if (opt.keep_eigenvectors) {
            for (std::size_t q = pos; q < end; ++q) {
                const Candidate& c = candidates[static_cast<std::size_t>(order[q])];
                const bool flipped = c.mirror_of >= 0;
                const Candidate& host =
                    flipped ? candidates[static_cast<std::size_t>(c.mirror_of)] : c;
                level.eigenvectors.push_back(
                    embed(host.vector, bases[static_cast<std::size_t>(host.n_up)], n,
                          flipped));
            }
            // re-orthonormalize the degenerate group (cross-sector vectors are
            // exactly orthogonal already; this tightens within-sector pairs)
            for (std::size_t a = 0; a < level.eigenvectors.size(); ++a) {
                Eigen::VectorXd& v = level.eigenvectors[a];
                for (int pass = 0; pass < 2; ++pass)
                    for (std::size_t b = 0; b < a; ++b)
                        v -= level.eigenvectors[b].dot(v) * level.eigenvectors[b];
                const double norm = v.norm();
                if (norm < 1e-8)
                    throw NumericalError(
                        "assemble_low_spectrum: degenerate group is rank deficient");
                v /= norm;
            }
        }
        spectrum.levels.push_back(std::move(level));
        pos = end;
    }

    if (static_cast<int>(spectrum.levels.size()) < n_levels)
        throw std::invalid_argument(
            "assemble_low_spectrum: n_levels exceeds the number of distinct energies");
    return spectrum;
}

} // namespace j1j2
