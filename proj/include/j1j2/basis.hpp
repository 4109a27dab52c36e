// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace j1j2 {

/// Bit-coded basis of one fixed-magnetization sector: all n_sites-bit
/// integers with exactly n_up set bits, sorted ascending. Bit 0 is site 0;
/// the site index increases toward higher bits. Immutable after
/// construction and safe for concurrent reads.
class SzSectorBasis {
  public:
    SzSectorBasis(int n_sites, int n_up);

    int n_sites() const { return n_sites_; }
    int n_up() const { return n_up_; }
    Eigen::Index size() const { return static_cast<Eigen::Index>(states_.size()); }
    std::span<const std::uint32_t> states() const { return states_; }
    std::uint32_t state(Eigen::Index k) const { return states_[static_cast<std::size_t>(k)]; }

    /// Ordinal index of a bitmask in this sector (inverse of state()).
    /// Throws std::out_of_range if the bitmask is not a sector member.
    Eigen::Index index_of(std::uint32_t state) const;

  private:
    int n_sites_;
    int n_up_;
    std::vector<std::uint32_t> states_;
};

inline SzSectorBasis enumerate_sector(int n_sites, int n_up) { return {n_sites, n_up}; }

/// One-site cyclic shift: bit i of the result is bit (i+1 mod n_sites) of
/// the input. Applying it n_sites times is the identity.
std::uint32_t translate(std::uint32_t state, int n_sites);

} // namespace j1j2
