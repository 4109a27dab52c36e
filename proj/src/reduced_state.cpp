// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#include "j1j2/reduced_state.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "j1j2/errors.hpp"

namespace j1j2 {

namespace {

PairKind classify_pair(int n_sites, int site_i, int site_j) {
    const int d = std::min(site_j - site_i, n_sites - (site_j - site_i));
    if (d == 1) return PairKind::nn;
    if (d == 2) return PairKind::nnn;
    return PairKind::other;
}

// Accumulate |psi><psi| traced down to (site_i, site_j) into rho.
void accumulate_pair_rdm(const Eigen::VectorXd& psi, int n_sites, int site_i, int site_j,
                         double weight, Eigen::Matrix4d& rho) {
    const std::uint32_t dim = 1u << n_sites;
    const std::uint32_t low_mask = (1u << site_i) - 1u;
    const std::uint32_t mid_bits = static_cast<std::uint32_t>(site_j - site_i - 1);
    const std::uint32_t mid_mask = (1u << mid_bits) - 1u;

    // gather the four (s_i, s_j) slices over the compressed complement index
    std::array<Eigen::VectorXd, 4> slice;
    for (auto& s : slice) s = Eigen::VectorXd::Zero(dim >> 2);
    for (std::uint32_t m = 0; m < dim; ++m) {
        const std::uint32_t bi = (m >> site_i) & 1u;
        const std::uint32_t bj = (m >> site_j) & 1u;
        const std::uint32_t r = 2u * bi + bj;
        const std::uint32_t c = (m & low_mask) | (((m >> (site_i + 1)) & mid_mask) << site_i) |
                                ((m >> (site_j + 1)) << (site_j - 1));
        slice[r][static_cast<Eigen::Index>(c)] = psi[static_cast<Eigen::Index>(m)];
    }
    for (int r = 0; r < 4; ++r)
        for (int c = r; c < 4; ++c) {
            const double v = weight * slice[static_cast<std::size_t>(r)].dot(
                                          slice[static_cast<std::size_t>(c)]);
            rho(r, c) += v;
            if (c != r) rho(c, r) += v;
        }
}

} // namespace

TwoSiteRDM two_site_rdm(const Eigen::VectorXd& state, int n_sites, int site_i, int site_j) {
    if (site_i < 0 || site_j >= n_sites || site_i >= site_j)
        throw std::invalid_argument("two_site_rdm: require 0 <= i < j < n_sites");
    if (state.size() != (Eigen::Index(1) << n_sites))
        throw std::invalid_argument("two_site_rdm: state length is not 2^n_sites");
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    accumulate_pair_rdm(state, n_sites, site_i, site_j, 1.0, rho);
    return {rho.cast<std::complex<double>>(), site_i, site_j,
            classify_pair(n_sites, site_i, site_j)};
}

TwoSiteRDM two_site_rdm(const SpectrumLevel& level, int site_i, int site_j) {
    if (level.eigenvectors.empty())
        throw std::invalid_argument("two_site_rdm: level carries no eigenvectors");
    const auto dim = static_cast<std::uint64_t>(level.eigenvectors.front().size());
    const int n_sites = std::bit_width(dim) - 1;
    if ((std::uint64_t(1) << n_sites) != dim)
        throw std::invalid_argument("two_site_rdm: eigenvector length is not a power of two");
    if (site_i < 0 || site_j >= n_sites || site_i >= site_j)
        throw std::invalid_argument("two_site_rdm: require 0 <= i < j < n_sites");

    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    const double weight = 1.0 / static_cast<double>(level.eigenvectors.size());
    for (const Eigen::VectorXd& psi : level.eigenvectors)
        accumulate_pair_rdm(psi, n_sites, site_i, site_j, weight, rho);
    return {rho.cast<std::complex<double>>(), site_i, site_j,
            classify_pair(n_sites, site_i, site_j)};
}

XParams extract_x_params(const TwoSiteRDM& rdm, double tol) {
    const Eigen::Matrix4cd& m = rdm.matrix;
    double off = 0.0;
    static constexpr int kPatternMask[4][4] = {{1, 0, 0, 0},
                                               {0, 1, 1, 0},
                                               {0, 1, 1, 0},
                                               {0, 0, 0, 1}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            if (!kPatternMask[r][c]) off = std::max(off, std::abs(m(r, c)));
            off = std::max(off, std::abs(std::imag(m(r, c))));
        }
    const double corner_asym = std::abs(m(0, 0) - m(3, 3));
    const double center_asym = std::abs(m(1, 1) - m(2, 2));
    const double w_asym = std::abs(m(1, 2) - m(2, 1));
    const double worst = std::max({off, corner_asym, center_asym, w_asym});
    if (worst > tol)
        throw StructureError("extract_x_params: matrix deviates from the symmetric X "
                             "form by " + std::to_string(worst) +
                             " (symmetry of the mixture is broken)");
    XParams p;
    p.a = 0.5 * std::real(m(0, 0) + m(3, 3));
    p.b = 0.5 * std::real(m(1, 1) + m(2, 2));
    p.w = 0.5 * std::real(m(1, 2) + m(2, 1));
    if (std::abs(2 * p.a + 2 * p.b - 1.0) > tol)
        throw StructureError("extract_x_params: trace defect beyond tolerance");
    return p;
}

CorrelatorSet correlators(const TwoSiteRDM& rdm) {
    const Eigen::Matrix4cd& m = rdm.matrix;
    CorrelatorSet c;
    c.cxx = std::real(m(0, 3) + m(3, 0) + m(1, 2) + m(2, 1));
    c.cyy = std::real(-m(0, 3) - m(3, 0) + m(1, 2) + m(2, 1));
    c.czz = std::real(m(0, 0) - m(1, 1) - m(2, 2) + m(3, 3));
    c.c_scalar = (c.cxx + c.cyy + c.czz) / 3.0;
    return c;
}

Eigen::Matrix2cd pauli(int axis) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
    switch (axis) {
        case 0: s << 0, 1, 1, 0; break;
        case 1: s << 0, -1i, 1i, 0; break;
        case 2: s << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli: axis must be 0, 1 or 2");
    }
    return s;
}

namespace {

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

} // namespace

BlochForm bloch_form(const TwoSiteRDM& rdm) {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    BlochForm b;
    for (int i = 0; i < 3; ++i) {
        b.x[i] = 0.25 * std::real((rdm.matrix * kron2(pauli(i), id)).trace());
        b.y[i] = 0.25 * std::real((rdm.matrix * kron2(id, pauli(i))).trace());
        for (int j = 0; j < 3; ++j)
            b.r(i, j) = 0.25 * std::real((rdm.matrix * kron2(pauli(i), pauli(j))).trace());
    }
    return b;
}

Eigen::Matrix4cd bloch_reconstruct(const BlochForm& b) {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    Eigen::Matrix4cd rho = 0.25 * Eigen::Matrix4cd::Identity();
    for (int i = 0; i < 3; ++i) {
        rho += b.x[i] * kron2(pauli(i), id);
        rho += b.y[i] * kron2(id, pauli(i));
        for (int j = 0; j < 3; ++j) rho += b.r(i, j) * kron2(pauli(i), pauli(j));
    }
    return rho;
}

Eigen::Matrix2cd trace_out_second(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix2cd out;
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap)
            out(a, ap) = rho(2 * a, 2 * ap) + rho(2 * a + 1, 2 * ap + 1);
    return out;
}

Eigen::Matrix2cd trace_out_first(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix2cd out;
    for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp)
            out(b, bp) = rho(b, bp) + rho(2 + b, 2 + bp);
    return out;
}

} // namespace j1j2
