// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#include "j1j2/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace j1j2 {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Entropy of an unnormalized 2x2 Hermitian block with trace p >= 0,
// weighted by p: p * S(B / p). Eigenvalues from trace and determinant.
double weighted_entropy2(const Eigen::Matrix2cd& block, double p) {
    if (p < 1e-15) return 0.0;
    const double t = std::real(block(0, 0) + block(1, 1));
    const double det = std::real(block(0, 0) * block(1, 1) - block(0, 1) * block(1, 0));
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * det));
    const double l1 = 0.5 * (t + disc);
    const double l2 = 0.5 * (t - disc);
    return -(xlog2x(std::max(0.0, l1)) + xlog2x(std::max(0.0, l2))) +
           p * std::log2(p);
    // note: -sum (l/p) log2(l/p) * p = -sum l log2 l + p log2 p
}

} // namespace

Eigen::Vector3d MeasurementBasis::direction() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
}

Eigen::Matrix2cd MeasurementBasis::projector_plus() const {
    const Eigen::Vector3d n = direction();
    Eigen::Matrix2cd e = Eigen::Matrix2cd::Identity();
    for (int a = 0; a < 3; ++a) e += n[a] * pauli(a);
    return 0.5 * e;
}

Eigen::Matrix2cd MeasurementBasis::projector_minus() const {
    return Eigen::Matrix2cd::Identity() - projector_plus();
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument("von_neumann_entropy: matrix is not square");
    const double herm_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > 1e-8)
        throw std::invalid_argument("von_neumann_entropy: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        const double lambda = solver.eigenvalues()[i];
        if (lambda < -1e-10)
            throw std::invalid_argument("von_neumann_entropy: eigenvalue " +
                                        std::to_string(lambda) + " below -1e-10");
        s -= xlog2x(std::max(0.0, lambda));
    }
    return s;
}

double mutual_information(const TwoSiteRDM& rdm) {
    const double sa = von_neumann_entropy(trace_out_second(rdm.matrix));
    const double sb = von_neumann_entropy(trace_out_first(rdm.matrix));
    const double sab = von_neumann_entropy(rdm.matrix);
    return sa + sb - sab;
}

namespace {

// Measurement objective precomputation: the conditional blocks are
// B_+-(n) = (rho_B +- sum_a n_a A_a) / 2 with A_a = Tr_A[(sigma_a x I) rho].
struct CcWorkspace {
    Eigen::Matrix2cd rho_b;
    std::array<Eigen::Matrix2cd, 3> a;
    double s_b = 0.0;

    explicit CcWorkspace(const TwoSiteRDM& rdm) {
        rho_b = trace_out_first(rdm.matrix);
        s_b = von_neumann_entropy(rho_b);
        for (int axis = 0; axis < 3; ++axis) {
            const Eigen::Matrix2cd s = pauli(axis);
            Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
            // Tr_A[(sigma x I) rho] over the first-site index
            for (int b = 0; b < 2; ++b)
                for (int bp = 0; bp < 2; ++bp) {
                    std::complex<double> sum = 0.0;
                    for (int a1 = 0; a1 < 2; ++a1)
                        for (int a2 = 0; a2 < 2; ++a2)
                            sum += s(a1, a2) * rdm.matrix(2 * a2 + b, 2 * a1 + bp);
                    acc(b, bp) = sum;
                }
            a[static_cast<std::size_t>(axis)] = acc;
        }
    }

    double objective(double theta, double phi) const {
        const double sx = std::sin(theta) * std::cos(phi);
        const double sy = std::sin(theta) * std::sin(phi);
        const double sz = std::cos(theta);
        const Eigen::Matrix2cd dir = sx * a[0] + sy * a[1] + sz * a[2];
        const Eigen::Matrix2cd bp = 0.5 * (rho_b + dir);
        const Eigen::Matrix2cd bm = 0.5 * (rho_b - dir);
        const double pp = std::real(bp(0, 0) + bp(1, 1));
        const double pm = std::real(bm(0, 0) + bm(1, 1));
        return s_b - (weighted_entropy2(bp, pp) + weighted_entropy2(bm, pm));
    }
};

struct Vertex {
    double theta, phi, value;
};

// Nelder-Mead ascent on the compact (theta, phi) objective.
Vertex nelder_mead_max(const CcWorkspace& ws, Vertex start, double step_theta,
                       double step_phi, double tol) {
    std::array<Vertex, 3> s;
    s[0] = start;
    s[1] = {start.theta + step_theta, start.phi, 0.0};
    s[2] = {start.theta, start.phi + step_phi, 0.0};
    s[1].value = ws.objective(s[1].theta, s[1].phi);
    s[2].value = ws.objective(s[2].theta, s[2].phi);

    const auto by_value = [](const Vertex& a, const Vertex& b) { return a.value > b.value; };
    for (int iter = 0; iter < 300; ++iter) {
        std::sort(s.begin(), s.end(), by_value); // s[0] best
        if (s[0].value - s[2].value < tol) break;
        const double ct = 0.5 * (s[0].theta + s[1].theta);
        const double cp = 0.5 * (s[0].phi + s[1].phi);
        Vertex refl{ct + (ct - s[2].theta), cp + (cp - s[2].phi), 0.0};
        refl.value = ws.objective(refl.theta, refl.phi);
        if (refl.value > s[0].value) {
            Vertex exp{ct + 2 * (ct - s[2].theta), cp + 2 * (cp - s[2].phi), 0.0};
            exp.value = ws.objective(exp.theta, exp.phi);
            s[2] = exp.value > refl.value ? exp : refl;
        } else if (refl.value > s[1].value) {
            s[2] = refl;
        } else {
            Vertex contr{ct + 0.5 * (s[2].theta - ct), cp + 0.5 * (s[2].phi - cp), 0.0};
            contr.value = ws.objective(contr.theta, contr.phi);
            if (contr.value > s[2].value) {
                s[2] = contr;
            } else { // shrink toward the best vertex
                for (int i = 1; i < 3; ++i) {
                    s[i].theta = s[0].theta + 0.5 * (s[i].theta - s[0].theta);
                    s[i].phi = s[0].phi + 0.5 * (s[i].phi - s[0].phi);
                    s[i].value = ws.objective(s[i].theta, s[i].phi);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(), by_value);
    return s[0];
}

MeasurementBasis canonical_basis(double theta, double phi) {
    const double two_pi = 2.0 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    if (theta < 0) theta += two_pi;
    if (theta > std::numbers::pi) {
        theta = two_pi - theta;
        phi += std::numbers::pi;
    }
    phi = std::fmod(phi, two_pi);
    if (phi < 0) phi += two_pi;
    return {theta, phi};
}

} // namespace

ClassicalCorrelationResult classical_correlation(const TwoSiteRDM& rdm,
                                                 const CcOptions& opt) {
    if (opt.grid_theta < 2 || opt.grid_phi < 1)
        throw std::invalid_argument("classical_correlation: grid too small");
    const CcWorkspace ws(rdm);

    Vertex best{0.0, 0.0, ws.objective(0.0, 0.0)};
    const double dtheta = std::numbers::pi / (opt.grid_theta - 1);
    const double dphi = 2.0 * std::numbers::pi / opt.grid_phi;
    for (int a = 0; a < opt.grid_theta; ++a) {
        const double theta = a * dtheta;
        for (int b = 0; b < opt.grid_phi; ++b) {
            const double phi = b * dphi;
            const double value = ws.objective(theta, phi);
            if (value > best.value) best = {theta, phi, value};
        }
    }
    best = nelder_mead_max(ws, best, 0.5 * dtheta, 0.5 * dphi, opt.refine_tol);
    const MeasurementBasis basis = canonical_basis(best.theta, best.phi);
    return {best.value, basis};
}

DiscordResult quantum_discord(const TwoSiteRDM& rdm, const CcOptions& opt) {
    const double info = mutual_information(rdm);
    const ClassicalCorrelationResult cc = classical_correlation(rdm, opt);
    const double d = std::max(0.0, info - cc.value);
    return {d, cc.value, info, cc.basis};
}

double gmqd_general(const BlochForm& b) {
    // half-expectation normalization: entries of (x, R) scaled by 2 turn the
    // quarter-normalized Bloch coefficients into half the raw correlators
    Eigen::Matrix<double, 3, 4> rp;
    rp.col(0) = 2.0 * b.x;
    rp.block<3, 3>(0, 1) = 2.0 * b.r;
    const Eigen::Matrix3d k = rp * rp.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(k, Eigen::EigenvaluesOnly);
    const Eigen::Vector3d mu2 = solver.eigenvalues();
    return mu2.sum() - mu2.maxCoeff();
}

double gmqd_xstate(double a, double b, double c, double d, std::complex<double> g,
                   std::complex<double> w) {
    constexpr double tol = 1e-9;
    if (std::abs(a + b + c + d - 1.0) > tol)
        throw std::invalid_argument("gmqd_xstate: diagonal does not sum to 1");
    if (b * c - std::norm(w) < -tol || a * d - std::norm(g) < -tol)
        throw std::invalid_argument("gmqd_xstate: positivity constraint violated");
    const double mu1 = 4.0 * std::pow(std::abs(g) + std::abs(w), 2);
    const double mu2 = 4.0 * std::pow(std::abs(g) - std::abs(w), 2);
    const double mu3 = 2.0 * ((a - c) * (a - c) + (b - d) * (b - d));
    return 0.25 * (mu1 + mu2 + mu3 - std::max(mu1, mu3));
}

double gmqd_symmetric(double c_component) {
    if (std::abs(c_component) > 1.0 + 1e-12)
        throw std::invalid_argument("gmqd_symmetric: |correlator| exceeds 1");
    return 0.5 * c_component * c_component;
}

double linear_entropy(const TwoSiteRDM& rdm) {
    return 1.0 - std::real((rdm.matrix * rdm.matrix).trace());
}

double discord_xstate_formula_unverified(double a, double b, double w) {
    const double w2 = 4.0 * w * w;
    return -2.0 * xlog2x(a + b) + 2.0 * xlog2x(a) + 2.0 * xlog2x(b) + 2.0 * xlog2x(w) -
           0.5 * (xlog2x(1.0 + w2) + xlog2x(1.0 - w2));
}

} // namespace j1j2
