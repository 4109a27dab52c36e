// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include "j1j2/chain.hpp"
#include "j1j2/eigensolver.hpp"
#include "j1j2/reduced_state.hpp"

namespace j1j2 {

/// Entanglement excitation energy of an SU(2)-symmetric state from its
/// energy per site: Delta E = -(8/3) e.
double exe_closed(double e_per_site);

struct ExeGrid {
    double min_value;
    Eigen::MatrixXd values; // grid_theta x grid_phi
};

/// Direct route: minimum over single-site flip directions of
/// <U_k H U_k> - <H>, with U_k = sin(theta)cos(phi) sx + sin(theta)sin(phi) sy
/// + cos(theta) sz acting on `site`. The conjugated expectation is a
/// quadratic form in the flip direction, evaluated exactly on the grid; the
/// whole grid is returned so flatness can be asserted. Degenerate levels use
/// the equal-weight mixture expectation.
ExeGrid exe_direct(const SpectrumLevel& level, const ChainSpec& spec, int site,
                   int grid_theta = 48, int grid_phi = 96);

/// f = 1 - <singlet| rho |singlet>, cross-checked against the correlator
/// route 3/4 + (3/4) c. For excited states this is an overlap deficit, not a
/// frustration measure.
double frustration_measure(const TwoSiteRDM& rdm);

/// Geometric lower bound E^(d) = 1 - sum of the d largest eigenvalues of rho.
/// d = 1 corresponds to the nondegenerate singlet projector of this model.
double frustration_lower_bound(const TwoSiteRDM& rdm, int d = 1);

/// F = (f_nn + f_nnn) / 2 over the 2N bonds of the ring.
double total_frustration(double f_nn, double f_nnn);

/// Nonlinear frustration-discord relation D_g = (8/9)(f - 3/4)^2.
double gmqd_from_frustration(double f);

struct FrustrationReport {
    double f_nn = 0.0;
    double f_nnn = 0.0;
    double e1_nn = 0.0;
    double e1_nnn = 0.0;
    double total_f = 0.0;
    double exe = 0.0;
    bool geometric_frustration_nn = false;
    bool geometric_frustration_nnn = false;
};

/// Bundle of the frustration observables for one level, computed on the
/// equal-weight mixture. The geometric flags fire when f exceeds the lower
/// bound by more than geometric_tol.
FrustrationReport frustration_report(const SpectrumLevel& level, const ChainSpec& spec,
                                     double geometric_tol = 1e-6);

} // namespace j1j2
