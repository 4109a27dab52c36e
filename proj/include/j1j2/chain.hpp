// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace j1j2 {

/// Definition of the spin-1/2 ring with nearest- and next-nearest-neighbor
/// exchange. Couplings are in units of j1; the boundary is always periodic
/// and the site count must be even (4..16).
struct ChainSpec {
    int n_sites;
    double j2 = 0.0;
    double j1 = 1.0;

    ChainSpec(int n_sites, double j2, double j1 = 1.0);

    /// Negative j2 is accepted but lies outside the antiferromagnetic sweep
    /// regime the analysis targets.
    bool out_of_regime() const { return j2 < 0.0; }

    std::uint32_t hilbert_dim() const { return 1u << n_sites; }
};

} // namespace j1j2
