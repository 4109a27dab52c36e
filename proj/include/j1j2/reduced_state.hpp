// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include <Eigen/Core>

#include "j1j2/eigensolver.hpp"

namespace j1j2 {

enum class PairKind { nn, nnn, other };

/// Two-site reduced density matrix in the product basis
/// {|00>, |01>, |10>, |11>} of sites (i, j); site i is the first factor and
/// the measurement side. Hermitian with unit trace; real-valued for the
/// eigen-mixtures of this model.
struct TwoSiteRDM {
    Eigen::Matrix4cd matrix;
    int site_i = 0;
    int site_j = 1;
    PairKind kind = PairKind::nn;
};

/// Equal-weight mixture over the degenerate level, traced down to sites
/// (i, j). The mixture is never materialized in the full space: each
/// eigenvector is partially traced by gathering the two site bits and
/// summing over the 2^(N-2) complement configurations.
TwoSiteRDM two_site_rdm(const SpectrumLevel& level, int site_i, int site_j);

/// RDM of a single full-space pure state (test and oracle entry point).
TwoSiteRDM two_site_rdm(const Eigen::VectorXd& state, int n_sites, int site_i, int site_j);

struct XParams {
    double a; // corner weight, |00> and |11>
    double b; // central diagonal weight, |01> and |10>
    double w; // central off-diagonal element
};

/// Extract (a, b, w) from the symmetric X form with corners (a, a) and
/// central block [[b, w], [w, b]]. Throws StructureError when any
/// off-pattern entry, corner asymmetry or trace defect exceeds tol --
/// the signal that the input is not an SU(2)+Z2 symmetric eigen-mixture.
XParams extract_x_params(const TwoSiteRDM& rdm, double tol = 1e-8);

struct CorrelatorSet {
    double cxx;      // <sigma_ix sigma_jx>
    double cyy;
    double czz;
    double c_scalar; // <sigma_i . sigma_j> / 3
};

CorrelatorSet correlators(const TwoSiteRDM& rdm);

/// Bloch decomposition rho = I/4 + sum_i x_i sigma_i x I
///                         + sum_i y_i I x sigma_i + sum_ij R_ij sigma_i x sigma_j,
/// i.e. x_i = Tr[rho sigma_i x I]/4 and R_ij = Tr[rho sigma_i x sigma_j]/4.
struct BlochForm {
    Eigen::Vector3d x;
    Eigen::Vector3d y;
    Eigen::Matrix3d r;
};

BlochForm bloch_form(const TwoSiteRDM& rdm);

/// Reconstruct the 4x4 matrix from a Bloch decomposition.
Eigen::Matrix4cd bloch_reconstruct(const BlochForm& b);

/// Single-site reductions of a two-site density matrix.
Eigen::Matrix2cd trace_out_second(const Eigen::Matrix4cd& rho);
Eigen::Matrix2cd trace_out_first(const Eigen::Matrix4cd& rho);

/// Pauli matrix for axis 0 = x, 1 = y, 2 = z.
Eigen::Matrix2cd pauli(int axis);

} // namespace j1j2
