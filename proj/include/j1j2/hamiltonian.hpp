// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Core>

#include "j1j2/basis.hpp"
#include "j1j2/chain.hpp"

namespace j1j2 {

/// Exchange bond between two sites. The bond list is the literal sum over
/// i = 0..N-1 of (i, i+1, j1) and (i, i+2, j2) with indices mod N, so for
/// N = 4 each next-nearest pair appears twice.
struct Bond {
    int site_a;
    int site_b;
    double coupling;
};

std::vector<Bond> ring_bonds(const ChainSpec& spec);

/// The J1-J2 Hamiltonian restricted to one magnetization sector, in the
/// sigma/2 spin convention. Read-only after construction; apply() is pure
/// and reentrant.
class SectorOperator {
  public:
    static constexpr Eigen::Index kDefaultDenseCap = 4096;

    SectorOperator(ChainSpec spec, SzSectorBasis basis);

    const ChainSpec& spec() const { return spec_; }
    const SzSectorBasis& basis() const { return basis_; }
    Eigen::Index dim() const { return basis_.size(); }

    /// H.v within the sector. Throws std::invalid_argument on size mismatch.
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

    /// Materialize the dense symmetric matrix. Throws CapacityError above
    /// the cap (use apply() with the Lanczos path instead).
    Eigen::MatrixXd dense(Eigen::Index cap = kDefaultDenseCap) const;

  private:
    ChainSpec spec_;
    SzSectorBasis basis_;
    std::vector<Bond> bonds_;
};

/// H.v on a full 2^N vector (no sector restriction). Used where single-site
/// rotations leave the magnetization sectors.
Eigen::VectorXd apply_h_full(const ChainSpec& spec, const Eigen::VectorXd& v);

} // namespace j1j2
