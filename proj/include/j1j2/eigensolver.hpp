// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "j1j2/chain.hpp"

namespace j1j2 {

struct EighResult {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // columns, orthonormal
};

/// Full decomposition of a real symmetric matrix (Householder
/// tridiagonalization + implicit-shift QL via Eigen). Throws
/// std::invalid_argument if the input is not symmetric within 1e-10 and
/// NumericalError if the iteration fails to converge.
EighResult dense_eigh(const Eigen::MatrixXd& m);

using LinearOp = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct LanczosOptions {
    double tol = 1e-10;       // residual tolerance, relative to max(1, |eigenvalue|)
    std::uint64_t seed = 0;   // start-vector seed
    int max_restarts = 60;
    int max_subspace = 0;     // per-restart Krylov size; 0 = automatic
};

struct EigenPairs {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns
};

/// Lowest k eigenpairs of a symmetric operator by Lanczos iteration with
/// full reorthogonalization. Converged pairs are locked and deflated out,
/// and restarts with fresh start vectors pick up the remaining copies of
/// degenerate multiplets. Throws NumericalError (carrying the best
/// residuals) once the restart budget is exhausted.
EigenPairs lanczos_lowest(const LinearOp& apply, Eigen::Index dim, int k,
                          const LanczosOptions& opt = {});

/// One distinct energy: the eigenvalue, its degeneracy and an orthonormal
/// basis of the degenerate subspace as full 2^N vectors (sector vectors
/// embedded by bitmask position), tagged with the n_up sector of each.
struct SpectrumLevel {
    double energy = 0.0;
    int degeneracy = 0;
    std::vector<Eigen::VectorXd> eigenvectors;
    std::vector<int> sector_tags;
};

struct LowSpectrum {
    int n_sites = 0;
    double degeneracy_tol = 0.0;
    std::vector<SpectrumLevel> levels; // ascending by energy
};

struct SolverOptions {
    Eigen::Index dense_cap = 4096;
    double degeneracy_tol = 1e-9;  // relative to max(1, |E|)
    double lanczos_tol = 1e-10;
    int k_per_sector = 0;          // 0 = n_levels * (n_sites + 1)
    std::uint64_t seed = 0;
    bool keep_eigenvectors = true; // false: energies and degeneracies only
};

/// Solve every magnetization sector, merge, group degenerate energies and
/// return the lowest n_levels distinct levels. Sectors n_up and N - n_up
/// share their spectra under the global spin flip, so only n_up <= N/2 is
/// solved and the partner sector is filled in by flipping bitmasks.
LowSpectrum assemble_low_spectrum(const ChainSpec& spec, int n_levels,
                                  const SolverOptions& opt = {});

/// Deterministic per-solve seed: mixes the user seed with the chain size,
/// the bit pattern of j2 and the sector label.
std::uint64_t sector_seed(std::uint64_t user_seed, int n_sites, double j2, int n_up);

} // namespace j1j2
