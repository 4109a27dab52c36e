// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#include "j1j2/basis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "j1j2/chain.hpp"

namespace j1j2 {

ChainSpec::ChainSpec(int n_sites_in, double j2_in, double j1_in)
    : n_sites(n_sites_in), j2(j2_in), j1(j1_in) {
    if (n_sites < 4 || n_sites > 16)
        throw std::invalid_argument("ChainSpec: n_sites must be in [4, 16], got " +
                                    std::to_string(n_sites));
    if (n_sites % 2 != 0)
        throw std::invalid_argument("ChainSpec: n_sites must be even, got " +
                                    std::to_string(n_sites));
}

SzSectorBasis::SzSectorBasis(int n_sites, int n_up) : n_sites_(n_sites), n_up_(n_up) {
    if (n_sites < 0 || n_sites > 16)
        throw std::invalid_argument("SzSectorBasis: n_sites must be in [0, 16]");
    if (n_up < 0 || n_up > n_sites)
        throw std::invalid_argument("SzSectorBasis: n_up must be in [0, n_sites]");
    const std::uint32_t dim = 1u << n_sites;
    for (std::uint32_t m = 0; m < dim; ++m)
        if (std::popcount(m) == n_up) states_.push_back(m);
    // counting in increasing m yields ascending order already
}

Eigen::Index SzSectorBasis::index_of(std::uint32_t state) const {
    const auto it = std::lower_bound(states_.begin(), states_.end(), state);
    if (it == states_.end() || *it != state)
        throw std::out_of_range("SzSectorBasis: bitmask not in sector");
    return static_cast<Eigen::Index>(it - states_.begin());
}

std::uint32_t translate(std::uint32_t state, int n_sites) {
    const std::uint32_t mask = (1u << n_sites) - 1u;
    return ((state >> 1) | (state << (n_sites - 1))) & mask;
}

} // namespace j1j2
