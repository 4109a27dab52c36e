// Copyright 2026 The J1J2 Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "schema_check.hpp"

namespace {

std::string binary_path() {
    if (const char* env = std::getenv("J1J2_BIN")) return env;
    return J1J2_DEFAULT_BIN;
}

struct RunResult {
    int exit_code;
    std::string output; // stdout only
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = "'" + binary_path() + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer;
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        output.append(buffer.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json load_schema(const std::string& name) {
    std::ifstream in(std::string(J1J2_SOURCE_DIR) + "/docs/schema/" + name);
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

} // namespace

TEST_CASE("spectrum: closed-form ground-state energies") {
    const RunResult r = run_cli("spectrum --n 4 --j2 0.3");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("levels").at(0).at("energy").get<double>() ==
          doctest::Approx(-1.7).epsilon(1e-10));
    const auto errors =
        j1j2::testing::validate_against_schema(doc, load_schema("spectrum.schema.json"));
    CHECK(errors.empty());

    const RunResult r6 = run_cli("spectrum --n 6 --j2 0");
    REQUIRE(r6.exit_code == 0);
    CHECK(nlohmann::json::parse(r6.output).at("levels").at(0).at("energy").get<double>() ==
          doctest::Approx(-2.802775637731995).epsilon(1e-10));
}

TEST_CASE("spectrum: threefold first excited level at n = 10") {
    const RunResult r = run_cli("spectrum --n 10 --j2 0.1 --levels 2");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("levels").at(1).at("degeneracy").get<int>() == 3);
}

TEST_CASE("spectrum: bad arguments exit with code 2") {
    CHECK(run_cli("spectrum --n 5 --j2 0.1").exit_code == 2);
    CHECK(run_cli("spectrum --n 4").exit_code == 2);        // j2 missing
    CHECK(run_cli("spectrum --badflag 1").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);                      // subcommand required
}

TEST_CASE("sweep: csv output is deterministic and piecewise-correct") {
    const RunResult a = run_cli("sweep --n 4 --steps 21 --out cli_sweep_a.csv --seed 7");
    REQUIRE(a.exit_code == 0);
    const RunResult b = run_cli("sweep --n 4 --steps 21 --out cli_sweep_b.csv --seed 7");
    REQUIRE(b.exit_code == 0);
    const std::string csv_a = slurp("cli_sweep_a.csv");
    CHECK(csv_a == slurp("cli_sweep_b.csv")); // byte identical
    std::istringstream in(csv_a);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "j2,level,energy,degeneracy,c_nn,c_nnn,dg_nn,dg_nnn,qd_nn,qd_nnn,sl_nn,"
          "f_nn,f_nnn,e1_nn,e1_nnn,total_f,exe,flags");
    std::string line;
    int plateau_checked = 0;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string j2, level, energy, degeneracy, c_nn, c_nnn, dg_nn;
        std::getline(cells, j2, ',');
        std::getline(cells, level, ',');
        std::getline(cells, energy, ',');
        std::getline(cells, degeneracy, ',');
        std::getline(cells, c_nn, ',');
        std::getline(cells, c_nnn, ',');
        std::getline(cells, dg_nn, ',');
        if (level != "0" || line.find("crossing") != std::string::npos) continue;
        const double j2v = std::stod(j2);
        const double dgv = std::stod(dg_nn);
        if (j2v < 0.5) CHECK(dgv == doctest::Approx(2.0 / 9.0).epsilon(1e-9));
        if (j2v > 0.5) CHECK(std::abs(dgv) <= 1e-9);
        ++plateau_checked;
    }
    CHECK(plateau_checked >= 18);
}

TEST_CASE("sweep: json format and summary validate against the schema") {
    const RunResult r = run_cli("sweep --n 4 --steps 5 --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    const auto errors =
        j1j2::testing::validate_against_schema(doc, load_schema("sweep.schema.json"));
    for (const auto& e : errors) MESSAGE(e);
    CHECK(errors.empty());

    const RunResult rs = run_cli(
        "sweep --n 4 --steps 5 --out cli_sweep_c.csv --summary cli_sweep_c.json");
    REQUIRE(rs.exit_code == 0);
    const auto summary = nlohmann::json::parse(slurp("cli_sweep_c.json"));
    CHECK(j1j2::testing::validate_against_schema(summary, load_schema("sweep.schema.json"))
              .empty());
}

TEST_CASE("sweep: plot script stub lands next to the csv") {
    const RunResult r =
        run_cli("sweep --n 4 --steps 5 --out cli_plot.csv --plot-script");
    REQUIRE(r.exit_code == 0);
    const std::string stub = slurp("cli_plot.csv.plot.py");
    CHECK(stub.find("cli_plot.csv") != std::string::npos);
}

TEST_CASE("config file drives a run and flags override it") {
    {
        std::ofstream cfg("cli_config.json");
        cfg << R"({"n": 4, "j2_min": 0.0, "j2_max": 1.0, "steps": 11,
                   "observables": ["energy"], "format": "json"})";
    }
    const RunResult r = run_cli("sweep --config cli_config.json");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.output).at("steps").get<int>() == 11);
    const RunResult overridden = run_cli("sweep --config cli_config.json --steps 5");
    REQUIRE(overridden.exit_code == 0);
    CHECK(nlohmann::json::parse(overridden.output).at("steps").get<int>() == 5);
    CHECK(run_cli("sweep --config cli_missing.json").exit_code == 2);
}

TEST_CASE("crossings: 4-site transitions are located") {
    const RunResult r = run_cli("crossings --n 4 --steps 41");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(j1j2::testing::validate_against_schema(doc, load_schema("crossings.schema.json"))
              .empty());
    bool gs_half = false, es_quarter = false, es_half = false;
    for (const auto& c : doc.at("crossings")) {
        const std::string kind = c.at("kind");
        const double j2 = c.at("j2");
        if (kind == "gs_kink" && std::abs(j2 - 0.5) < 1e-6) gs_half = true;
        if (kind == "es_crossing" && std::abs(j2 - 0.25) < 1e-6) es_quarter = true;
        if (kind == "es_crossing" && std::abs(j2 - 0.5) < 1e-6) es_half = true;
    }
    CHECK(gs_half);
    CHECK(es_quarter);
    CHECK(es_half);
}

TEST_CASE("validate: closed-form tables pass, unsupported sizes exit 2") {
    const RunResult r4 = run_cli("validate --n 4");
    CHECK(r4.exit_code == 0);
    CHECK(r4.output.find("PASS") != std::string::npos);
    const RunResult r6 = run_cli("validate --n 6");
    CHECK(r6.exit_code == 0);
    CHECK(r6.output.find("PASS") != std::string::npos);
    CHECK(r6.output.find("note:") != std::string::npos);
    CHECK(run_cli("validate --n 8").exit_code == 2);
}

TEST_CASE("sweep: a failing grid writes completed rows plus an error manifest") {
    // more distinct levels than the 4-site spectrum has anywhere
    const RunResult r =
        run_cli("sweep --n 4 --levels 12 --steps 3 --out cli_partial.csv");
    CHECK(r.exit_code == 3);
    std::istringstream in(slurp("cli_partial.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("j2,level,", 0) == 0);
    const auto manifest = nlohmann::json::parse(slurp("cli_partial.csv.errors.json"));
    CHECK(manifest.at("errors").size() == 3);
    CHECK(manifest.at("errors").at(0).contains("message"));
}
