// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include <Eigen/Core>

#include "j1j2/reduced_state.hpp"

namespace j1j2 {

/// Rank-1 projective measurement direction on the first qubit. The
/// projectors are E_+- = (I +- n.sigma)/2 with n the Bloch unit vector of
/// (theta, phi).
struct MeasurementBasis {
    double theta = 0.0; // [0, pi]
    double phi = 0.0;   // [0, 2 pi)

    Eigen::Vector3d direction() const;
    Eigen::Matrix2cd projector_plus() const;
    Eigen::Matrix2cd projector_minus() const;
};

/// Von Neumann entropy in bits, -sum lambda log2 lambda with 0 log 0 = 0.
/// Throws std::invalid_argument for non-Hermitian input or an eigenvalue
/// below -1e-10.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

/// S(rho_A) + S(rho_B) - S(rho).
double mutual_information(const TwoSiteRDM& rdm);

struct CcOptions {
    int grid_theta = 64;
    int grid_phi = 128;
    double refine_tol = 1e-9; // objective tolerance of the local refinement
};

struct ClassicalCorrelationResult {
    double value;
    MeasurementBasis basis;
};

/// max over projective bases on the first site of
/// S(rho_B) - sum_k p_k S(rho_B|k), by exhaustive (theta, phi) grid search
/// followed by Nelder-Mead refinement.
ClassicalCorrelationResult classical_correlation(const TwoSiteRDM& rdm,
                                                 const CcOptions& opt = {});

struct DiscordResult {
    double discord;
    double classical_correlation;
    double mutual_information;
    MeasurementBasis optimal_basis;
};

/// Definition-based quantum discord D = I - C, measurement on the first site.
DiscordResult quantum_discord(const TwoSiteRDM& rdm, const CcOptions& opt = {});

/// Geometric discord from the Bloch form: sum of squared singular values of
/// the augmented correlation matrix (x, R) minus the largest, in the
/// normalization where a Bell state gives mu^2 = (1/4, 1/4, 1/4) and 1/2.
double gmqd_general(const BlochForm& b);

/// Closed form for a general X state with diagonal (a, b, c, d),
/// anti-corner g and central off-diagonal w. Throws std::invalid_argument
/// when the trace or positivity constraints are violated.
double gmqd_xstate(double a, double b, double c, double d, std::complex<double> g,
                   std::complex<double> w);

/// SU(2)-symmetric shortcut: D_g = c^2 / 2 with c the per-component
/// correlator <sigma_i,alpha sigma_j,alpha>.
double gmqd_symmetric(double c_component);

/// S_l = 1 - Tr(rho^2).
double linear_entropy(const TwoSiteRDM& rdm);

/// Closed-form discord expression for the symmetric X state (a, b, w),
/// retained for comparison only: as printed it fails basic sanity checks
/// (it yields -1 for an uncorrelated state and -2 for a Bell state), so it
/// is never used by the production observables. Prefer quantum_discord().
double discord_xstate_formula_unverified(double a, double b, double w);

} // namespace j1j2
