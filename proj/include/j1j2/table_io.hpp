// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "j1j2/eigensolver.hpp"
#include "j1j2/sweep.hpp"

namespace j1j2 {

/// Locale-independent formatting with 12 significant digits ('.' decimal
/// separator always). NaN renders as "NA".
std::string format_number(double value);

/// CSV column order of the sweep table. Fixed schema:
/// j2,level,energy,degeneracy,c_nn,c_nnn,dg_nn,dg_nnn,qd_nn,qd_nnn,sl_nn,
/// f_nn,f_nnn,e1_nn,e1_nnn,total_f,exe,flags
extern const std::vector<std::string> kSweepCsvColumns;

/// Row flags: "crossing" (merged degenerate crossing at this grid point),
/// "near_kink" (finite-difference stencil suppressed) and "overlap_deficit"
/// (excited level: the f columns quantify overlap deficit, not frustration).
std::vector<std::string> row_flags(const SweepRow& row, int level);

void write_sweep_csv(std::ostream& out, const SweepTable& table);

nlohmann::ordered_json sweep_to_json(const SweepTable& table);
nlohmann::ordered_json spectrum_to_json(const ChainSpec& spec, const LowSpectrum& spectrum);
nlohmann::ordered_json crossings_to_json(const SweepTable& table,
                                         const std::vector<CrossingReport>& reports);

/// Matplotlib stub that renders the per-level observable columns of a sweep
/// CSV; written next to the data file on request.
std::string plot_script_stub(const std::string& csv_path);

} // namespace j1j2
