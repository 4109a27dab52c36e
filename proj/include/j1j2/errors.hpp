// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace j1j2 {

/// Requested dense storage above the configured cap; caller should switch to
/// the matrix-free / Lanczos path.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative solver failed to reach the requested tolerance.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix violated an expected structural form (e.g. X-shape) beyond tolerance.
struct StructureError : std::runtime_error {
    explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace j1j2
