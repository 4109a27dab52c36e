// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#include "j1j2/table_io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace j1j2 {

std::string format_number(double value) {
    if (std::isnan(value)) return "NA";
    char buffer[40];
    const auto res = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                   std::chars_format::general, 12);
    return {buffer, res.ptr};
}

const std::vector<std::string> kSweepCsvColumns = {
    "j2",    "level", "energy", "degeneracy", "c_nn",  "c_nnn", "dg_nn",
    "dg_nnn", "qd_nn", "qd_nnn", "sl_nn",      "f_nn",  "f_nnn", "e1_nn",
    "e1_nnn", "total_f", "exe",  "flags"};

std::vector<std::string> row_flags(const SweepRow& row, int level) {
    std::vector<std::string> flags;
    if (row.crossing) flags.push_back("crossing");
    if (row.near_kink) flags.push_back("near_kink");
    if (level >= 1) flags.push_back("overlap_deficit");
    return flags;
}

namespace {

std::string joined_flags(const SweepRow& row, int level) {
    std::string out;
    for (const std::string& f : row_flags(row, level)) {
        if (!out.empty()) out += ';';
        out += f;
    }
    return out;
}

} // namespace

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
    for (std::size_t c = 0; c < kSweepCsvColumns.size(); ++c) {
        if (c) out << ',';
        out << kSweepCsvColumns[c];
    }
    out << '\n';
    for (const SweepRow& row : table.rows) {
        for (std::size_t l = 0; l < row.levels.size(); ++l) {
            const LevelObservables& obs = row.levels[l];
            out << format_number(row.j2) << ',' << l << ',' << format_number(obs.energy)
                << ',' << obs.degeneracy << ',' << format_number(obs.c_nn) << ','
                << format_number(obs.c_nnn) << ',' << format_number(obs.dg_nn) << ','
                << format_number(obs.dg_nnn) << ',' << format_number(obs.qd_nn) << ','
                << format_number(obs.qd_nnn) << ',' << format_number(obs.sl_nn) << ','
                << format_number(obs.f_nn) << ',' << format_number(obs.f_nnn) << ','
                << format_number(obs.e1_nn) << ',' << format_number(obs.e1_nnn) << ','
                << format_number(obs.total_f) << ',' << format_number(obs.exe) << ','
                << joined_flags(row, static_cast<int>(l)) << '\n';
        }
    }
}

namespace {

nlohmann::ordered_json number_or_null(double value) {
    if (std::isnan(value)) return nullptr;
    return value;
}

} // namespace

nlohmann::ordered_json sweep_to_json(const SweepTable& table) {
    nlohmann::ordered_json doc;
    doc["n"] = table.n_sites;
    doc["j2_min"] = table.j2_min;
    doc["j2_max"] = table.j2_max;
    doc["steps"] = table.steps;
    doc["n_levels"] = table.options.n_levels;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const SweepRow& row : table.rows) {
        for (std::size_t l = 0; l < row.levels.size(); ++l) {
            const LevelObservables& obs = row.levels[l];
            nlohmann::ordered_json r;
            r["j2"] = row.j2;
            r["level"] = l;
            r["energy"] = number_or_null(obs.energy);
            r["degeneracy"] = obs.degeneracy;
            r["c_nn"] = number_or_null(obs.c_nn);
            r["c_nnn"] = number_or_null(obs.c_nnn);
            r["dg_nn"] = number_or_null(obs.dg_nn);
            r["dg_nnn"] = number_or_null(obs.dg_nnn);
            r["qd_nn"] = number_or_null(obs.qd_nn);
            r["qd_nnn"] = number_or_null(obs.qd_nnn);
            r["sl_nn"] = number_or_null(obs.sl_nn);
            r["f_nn"] = number_or_null(obs.f_nn);
            r["f_nnn"] = number_or_null(obs.f_nnn);
            r["e1_nn"] = number_or_null(obs.e1_nn);
            r["e1_nnn"] = number_or_null(obs.e1_nnn);
            r["total_f"] = number_or_null(obs.total_f);
            r["exe"] = number_or_null(obs.exe);
            r["fh_c_nn"] = obs.fh_valid ? number_or_null(obs.fh_c_nn)
                                        : nlohmann::ordered_json(nullptr);
            r["fh_c_nnn"] = obs.fh_valid ? number_or_null(obs.fh_c_nnn)
                                         : nlohmann::ordered_json(nullptr);
            r["flags"] = row_flags(row, static_cast<int>(l));
            doc["rows"].push_back(std::move(r));
        }
    }
    if (!table.errors.empty()) {
        doc["errors"] = nlohmann::ordered_json::array();
        for (const SweepError& e : table.errors)
            doc["errors"].push_back({{"j2", e.j2}, {"message", e.message}});
    }
    return doc;
}

nlohmann::ordered_json spectrum_to_json(const ChainSpec& spec, const LowSpectrum& spectrum) {
    nlohmann::ordered_json doc;
    doc["n"] = spec.n_sites;
    doc["j2"] = spec.j2;
    doc["degeneracy_tol"] = spectrum.degeneracy_tol;
    doc["levels"] = nlohmann::ordered_json::array();
    for (const SpectrumLevel& level : spectrum.levels) {
        nlohmann::ordered_json l;
        l["energy"] = level.energy;
        l["degeneracy"] = level.degeneracy;
        l["sectors"] = level.sector_tags;
        doc["levels"].push_back(std::move(l));
    }
    return doc;
}

nlohmann::ordered_json crossings_to_json(const SweepTable& table,
                                         const std::vector<CrossingReport>& reports) {
    nlohmann::ordered_json doc;
    doc["n"] = table.n_sites;
    doc["j2_min"] = table.j2_min;
    doc["j2_max"] = table.j2_max;
    doc["steps"] = table.steps;
    doc["crossings"] = nlohmann::ordered_json::array();
    for (const CrossingReport& r : reports) {
        nlohmann::ordered_json c;
        c["kind"] = to_string(r.kind);
        c["j2"] = r.j2_location;
        c["resolution"] = r.resolution;
        c["level"] = r.level;
        c["observable"] = r.observable;
        c["magnitude"] = r.magnitude;
        doc["crossings"].push_back(std::move(c));
    }
    return doc;
}

std::string plot_script_stub(const std::string& csv_path) {
    std::string s;
    s += "#!/usr/bin/env python3\n";
    s += "\"\"\"Render the per-level observable columns of a sweep CSV.\"\"\"\n";
    s += "import csv\n";
    s += "import matplotlib.pyplot as plt\n\n";
    s += "PATH = \"" + csv_path + "\"\n";
    s += "COLUMNS = [\"energy\", \"dg_nn\", \"dg_nnn\", \"qd_nn\", \"f_nn\", \"f_nnn\"]\n\n";
    s += "rows = [r for r in csv.DictReader(open(PATH))]\n";
    s += "levels = sorted({r[\"level\"] for r in rows})\n";
    s += "fig, axes = plt.subplots(len(COLUMNS), 1, sharex=True, figsize=(7, 2.2 * len(COLUMNS)))\n";
    s += "for ax, col in zip(axes, COLUMNS):\n";
    s += "    for lv in levels:\n";
    s += "        pts = [(float(r[\"j2\"]), float(r[col])) for r in rows\n";
    s += "               if r[\"level\"] == lv and r[col] != \"NA\"]\n";
    s += "        if pts:\n";
    s += "            ax.plot(*zip(*pts), label=f\"level {lv}\")\n";
    s += "    ax.set_ylabel(col)\n";
    s += "    ax.legend(loc=\"best\", fontsize=8)\n";
    s += "axes[-1].set_xlabel(\"j2\")\n";
    s += "fig.tight_layout()\n";
    s += "plt.show()\n";
    return s;
}

} // namespace j1j2
