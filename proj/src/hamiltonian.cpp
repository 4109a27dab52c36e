// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#include "j1j2/hamiltonian.hpp"

#include <stdexcept>
#include <string>

#include "j1j2/errors.hpp"

namespace j1j2 {

std::vector<Bond> ring_bonds(const ChainSpec& spec) {
    std::vector<Bond> bonds;
    bonds.reserve(2 * static_cast<std::size_t>(spec.n_sites));
    for (int i = 0; i < spec.n_sites; ++i) {
        bonds.push_back({i, (i + 1) % spec.n_sites, spec.j1});
        bonds.push_back({i, (i + 2) % spec.n_sites, spec.j2});
    }
    return bonds;
}

SectorOperator::SectorOperator(ChainSpec spec, SzSectorBasis basis)
    : spec_(spec), basis_(std::move(basis)), bonds_(ring_bonds(spec)) {
    if (basis_.n_sites() != spec_.n_sites)
        throw std::invalid_argument("SectorOperator: basis and spec disagree on n_sites");
}

namespace {

// s_i.s_j on a product state: +-1/4 on the diagonal depending on bit
// alignment, and 1/2 to the bit-swapped state when anti-aligned.
template <typename Lookup>
void apply_bonds(const std::vector<Bond>& bonds, std::span<const std::uint32_t> states,
                 const Eigen::VectorXd& v, Eigen::VectorXd& out, const Lookup& index_of) {
    const Eigen::Index n = static_cast<Eigen::Index>(states.size());
    for (Eigen::Index a = 0; a < n; ++a) {
        const std::uint32_t m = states[static_cast<std::size_t>(a)];
        const double va = v[a];
        double diag = 0.0;
        for (const Bond& bond : bonds) {
            const std::uint32_t ba = (m >> bond.site_a) & 1u;
            const std::uint32_t bb = (m >> bond.site_b) & 1u;
            if (ba == bb) {
                diag += 0.25 * bond.coupling;
            } else {
                diag -= 0.25 * bond.coupling;
                const std::uint32_t flipped =
                    m ^ ((1u << bond.site_a) | (1u << bond.site_b));
                out[index_of(flipped)] += 0.5 * bond.coupling * va;
            }
        }
        out[a] += diag * va;
    }
}

} // namespace

Eigen::VectorXd SectorOperator::apply(const Eigen::VectorXd& v) const {
    if (v.size() != dim())
        throw std::invalid_argument("SectorOperator::apply: vector length " +
                                    std::to_string(v.size()) + " != sector dimension " +
                                    std::to_string(dim()));
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
    apply_bonds(bonds_, basis_.states(), v, out,
                [this](std::uint32_t m) { return basis_.index_of(m); });
    return out;
}

Eigen::MatrixXd SectorOperator::dense(Eigen::Index cap) const {
    if (dim() > cap)
        throw CapacityError("SectorOperator::dense: sector dimension " +
                            std::to_string(dim()) + " exceeds cap " + std::to_string(cap) +
                            "; use apply() with the Lanczos path");
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim(), dim());
    for (Eigen::Index a = 0; a < dim(); ++a) {
        const std::uint32_t m = basis_.state(a);
        double diag = 0.0;
        for (const Bond& bond : bonds_) {
            const std::uint32_t ba = (m >> bond.site_a) & 1u;
            const std::uint32_t bb = (m >> bond.site_b) & 1u;
            if (ba == bb) {
                diag += 0.25 * bond.coupling;
            } else {
                diag -= 0.25 * bond.coupling;
                const std::uint32_t flipped =
                    m ^ ((1u << bond.site_a) | (1u << bond.site_b));
                h(basis_.index_of(flipped), a) += 0.5 * bond.coupling;
            }
        }
        h(a, a) += diag;
    }
    return h;
}

Eigen::VectorXd apply_h_full(const ChainSpec& spec, const Eigen::VectorXd& v) {
    const Eigen::Index dim = static_cast<Eigen::Index>(spec.hilbert_dim());
    if (v.size() != dim)
        throw std::invalid_argument("apply_h_full: vector length does not match 2^N");
    const std::vector<Bond> bonds = ring_bonds(spec);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        const std::uint32_t m = static_cast<std::uint32_t>(a);
        const double va = v[a];
        if (va == 0.0) continue;
        double diag = 0.0;
        for (const Bond& bond : bonds) {
            const std::uint32_t ba = (m >> bond.site_a) & 1u;
            const std::uint32_t bb = (m >> bond.site_b) & 1u;
            if (ba == bb) {
                diag += 0.25 * bond.coupling;
            } else {
                diag -= 0.25 * bond.coupling;
                const std::uint32_t flipped =
                    m ^ ((1u << bond.site_a) | (1u << bond.site_b));
                out[static_cast<Eigen::Index>(flipped)] += 0.5 * bond.coupling * va;
            }
        }
        out[a] += diag * va;
    }
    return out;
}

} // namespace j1j2
