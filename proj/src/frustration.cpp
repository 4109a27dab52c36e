// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#include "j1j2/frustration.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "j1j2/errors.hpp"
#include "j1j2/hamiltonian.hpp"

namespace j1j2 {

double exe_closed(double e_per_site) { return -(8.0 / 3.0) * e_per_site; }

namespace {

// sigma_x at `site` on a full-space real vector
Eigen::VectorXd apply_sx(const Eigen::VectorXd& v, int site) {
    Eigen::VectorXd out(v.size());
    const Eigen::Index bit = Eigen::Index(1) << site;
    for (Eigen::Index m = 0; m < v.size(); ++m) out[m] = v[m ^ bit];
    return out;
}

// sigma_y at `site` equals i times this real vector
Eigen::VectorXd apply_sy_imag(const Eigen::VectorXd& v, int site) {
    Eigen::VectorXd out(v.size());
    const Eigen::Index bit = Eigen::Index(1) << site;
    for (Eigen::Index m = 0; m < v.size(); ++m)
        out[m] = (m & bit) ? v[m ^ bit] : -v[m ^ bit];
    return out;
}

Eigen::VectorXd apply_sz(const Eigen::VectorXd& v, int site) {
    Eigen::VectorXd out(v.size());
    const Eigen::Index bit = Eigen::Index(1) << site;
    for (Eigen::Index m = 0; m < v.size(); ++m) out[m] = (m & bit) ? -v[m] : v[m];
    return out;
}

} // namespace

ExeGrid exe_direct(const SpectrumLevel& level, const ChainSpec& spec, int site,
                   int grid_theta, int grid_phi) {
    if (site < 0 || site >= spec.n_sites)
        throw std::invalid_argument("exe_direct: site out of range");
    if (level.eigenvectors.empty())
        throw std::invalid_argument("exe_direct: level carries no eigenvectors");
    if (grid_theta < 2 || grid_phi < 1)
        throw std::invalid_argument("exe_direct: grid too small");

    // <U H U> = n^T M n with M_ab = <sigma_a H sigma_b> averaged over the
    // mixture. The x-y and y-z entries are purely imaginary for real
    // eigenvectors and drop out of the real quadratic form.
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    const double weight = 1.0 / static_cast<double>(level.eigenvectors.size());
    for (const Eigen::VectorXd& psi : level.eigenvectors) {
        const Eigen::VectorXd wx = apply_sx(psi, site);
        const Eigen::VectorXd wy = apply_sy_imag(psi, site);
        const Eigen::VectorXd wz = apply_sz(psi, site);
        const Eigen::VectorXd hwx = apply_h_full(spec, wx);
        const Eigen::VectorXd hwy = apply_h_full(spec, wy);
        const Eigen::VectorXd hwz = apply_h_full(spec, wz);
        m(0, 0) += weight * wx.dot(hwx);
        m(1, 1) += weight * wy.dot(hwy);
        m(2, 2) += weight * wz.dot(hwz);
        const double xz = weight * wx.dot(hwz);
        m(0, 2) += xz;
        m(2, 0) += xz;
    }

    ExeGrid grid;
    grid.values.resize(grid_theta, grid_phi);
    grid.min_value = std::numeric_limits<double>::infinity();
    for (int a = 0; a < grid_theta; ++a) {
        const double theta = std::numbers::pi * a / (grid_theta - 1);
        for (int b = 0; b < grid_phi; ++b) {
            const double phi = 2.0 * std::numbers::pi * b / grid_phi;
            const Eigen::Vector3d n{std::sin(theta) * std::cos(phi),
                                    std::sin(theta) * std::sin(phi), std::cos(theta)};
            const double value = n.dot(m * n) - level.energy;
            grid.values(a, b) = value;
            grid.min_value = std::min(grid.min_value, value);
        }
    }
    return grid;
}

double frustration_measure(const TwoSiteRDM& rdm) {
    const Eigen::Matrix4cd& r = rdm.matrix;
    // overlap with (|01> - |10>)/sqrt(2)
    const double singlet_weight =
        0.5 * std::real(r(1, 1) + r(2, 2) - r(1, 2) - r(2, 1));
    const double direct = 1.0 - singlet_weight;
    const double from_correlator = 0.75 + 0.75 * correlators(rdm).c_scalar;
    if (std::abs(direct - from_correlator) > 1e-10)
        throw NumericalError("frustration_measure: projector and correlator routes "
                             "disagree beyond 1e-10");
    return direct;
}

double frustration_lower_bound(const TwoSiteRDM& rdm, int d) {
    if (d < 1 || d > 4)
        throw std::invalid_argument("frustration_lower_bound: d must be in [1, 4]");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rdm.matrix,
                                                           Eigen::EigenvaluesOnly);
    double sum = 0.0;
    for (int i = 0; i < d; ++i) sum += solver.eigenvalues()[3 - i]; // descending
    return 1.0 - sum;
}

double total_frustration(double f_nn, double f_nnn) {
    constexpr double tol = 1e-9;
    if (f_nn < -tol || f_nn > 1.0 + tol || f_nnn < -tol || f_nnn > 1.0 + tol)
        throw std::invalid_argument("total_frustration: inputs must lie in [0, 1]");
    return 0.5 * (f_nn + f_nnn);
}

double gmqd_from_frustration(double f) {
    if (f < -1e-9 || f > 1.5 + 1e-9)
        throw std::invalid_argument("gmqd_from_frustration: f outside [0, 3/2]");
    const double d = f - 0.75;
    return (8.0 / 9.0) * d * d;
}

FrustrationReport frustration_report(const SpectrumLevel& level, const ChainSpec& spec,
                                     double geometric_tol) {
    const TwoSiteRDM rdm_nn = two_site_rdm(level, 0, 1);
    const TwoSiteRDM rdm_nnn = two_site_rdm(level, 0, 2);
    FrustrationReport rep;
    rep.f_nn = frustration_measure(rdm_nn);
    rep.f_nnn = frustration_measure(rdm_nnn);
    rep.e1_nn = frustration_lower_bound(rdm_nn);
    rep.e1_nnn = frustration_lower_bound(rdm_nnn);
    rep.total_f = total_frustration(rep.f_nn, rep.f_nnn);
    rep.exe = exe_closed(level.energy / spec.n_sites);
    rep.geometric_frustration_nn = rep.f_nn - rep.e1_nn > geometric_tol;
    rep.geometric_frustration_nnn = rep.f_nnn - rep.e1_nnn > geometric_tol;
    return rep;
}

} // namespace j1j2
