#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include <json.hpp>

#include "vacbound/scenario.hpp"

using namespace vacbound;

namespace {

std::string write_tmp(const std::string& name, const std::string& body) {
    const std::string path = "/tmp/vacbound_test_" + name + ".json";
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("config validation names the problem") {
    CHECK_THROWS_AS(load_scenario("/nonexistent/config.json"), ConfigInvalid);

    auto bad_schema = write_tmp("schema", R"({"schema": 2, "task": "CasimirAlpha"})");
    CHECK_THROWS_AS(load_scenario(bad_schema), ConfigInvalid);

    auto bad_task = write_tmp("task", R"({"schema": 1, "task": "Nonsense"})");
    CHECK_THROWS_AS(load_scenario(bad_task), ConfigInvalid);

    // missing required parameter surfaces with its key in the message
    auto missing = write_tmp("missing",
                             R"({"schema": 1, "task": "WallAudit", "parameters": {"R": 1.0}})");
    auto sc = load_scenario(missing);
    try {
        run_scenario(sc);
        CHECK(false);
    } catch (const ConfigInvalid& e) {
        CHECK(std::string(e.what()).find("E_v") != std::string::npos);
    }
}

TEST_CASE("report node serializes with 17 significant digits") {
    ReportNode n = ReportNode::object();
    n.set("pi", 3.14159265358979323846);
    n.set("third", 1.0 / 3.0);
    n.set("count", 42);
    n.set("label", std::string("a\"b"));
    const std::string s = n.to_json();
    CHECK(s.find("3.1415926535897931") != std::string::npos);
    CHECK(s.find("0.33333333333333331") != std::string::npos);
    CHECK(s.find("\"a\\\"b\"") != std::string::npos);

    // round trip through a strict parser
    auto j = nlohmann::json::parse(s);
    CHECK(j["pi"].get<double>() == 3.14159265358979323846);
    CHECK(j["third"].get<double>() == 1.0 / 3.0);
    CHECK(j["count"].get<std::int64_t>() == 42);
}

TEST_CASE("check-conditions scenario maps verdicts to exit codes") {
    auto stiff = write_tmp("stiff", R"({"schema": 1, "task": "CheckConditions",
        "parameters": {"rho": 1.0, "p1": 1.0, "p2": 1.0, "p3": 1.0, "n_samples": 500}})");
    auto rep = run_scenario(load_scenario(stiff));
    CHECK(rep.exit_code == 2);
    const ReportNode* r = rep.root.find("results");
    REQUIRE(r != nullptr);
    CHECK(r->find("verdict") != nullptr);

    auto dust = write_tmp("dust", R"({"schema": 1, "task": "CheckConditions",
        "parameters": {"rho": 1.0, "p1": 0.0, "p2": 0.0, "p3": 0.0, "n_samples": 500}})");
    CHECK(run_scenario(load_scenario(dust)).exit_code == 0);
}

TEST_CASE("full pipeline on the interval reaches PositiveTotal") {
    auto cfg = write_tmp("pipeline", R"({"schema": 1, "task": "FullPipeline",
        "parameters": {"geometry": "interval", "R": 1.0, "t": 0.01, "rho_w_factor": 3.0}})");
    auto rep = run_scenario(load_scenario(cfg));
    CHECK(rep.exit_code == 0);

    auto j = nlohmann::json::parse(rep.root.to_json(2));
    CHECK(j["results"]["verdict"] == "PositiveTotal");
    CHECK(std::abs(j["results"]["alpha"].get<double>() - (-std::numbers::pi / 24.0)) < 1e-12);
    CHECK(j["results"]["audit"]["total_energy"].get<double>() > 0.0);
    // provenance carries seeds, tolerances, constants
    CHECK(j["provenance"]["seed"].is_number());
    CHECK(j["provenance"]["tolerances"]["equilibrium_rel"].get<double>() == 1e-6);
    CHECK(j["provenance"]["constants"]["c_m_per_s"].get<double>() == 299792458.0);
}

TEST_CASE("stiff wall pipeline exits 2, saturated exits 3") {
    auto stiff = write_tmp("pipe_stiff", R"({"schema": 1, "task": "FullPipeline",
        "parameters": {"geometry": "interval", "t": 0.01, "rho_w_factor": 1.0}})");
    CHECK(run_scenario(load_scenario(stiff)).exit_code == 2);

    auto sat = write_tmp("pipe_sat", R"({"schema": 1, "task": "WallAudit",
        "parameters": {"E_v": -0.1, "t": 0.01, "rho_w_factor": 2.0}})");
    CHECK(run_scenario(load_scenario(sat)).exit_code == 3);
}

TEST_CASE("results payload is deterministic across reruns and thread counts") {
    auto cfg = write_tmp("det", R"({"schema": 1, "task": "CheckConditions", "seed": 9,
        "parameters": {"rho": 1.5, "p1": 0.4, "p2": -0.2, "p3": 0.3, "n_samples": 20000}})");
    auto sc = load_scenario(cfg);
    const std::string a = run_scenario(sc, 1).results_payload();
    const std::string b = run_scenario(sc, 1).results_payload();
    const std::string c = run_scenario(sc, 4).results_payload();
    CHECK(a == b);
    CHECK(a == c);
    CHECK(!a.empty());
}

TEST_CASE("csv output has a header and monotone first column") {
    auto cfg = write_tmp("csv", R"({"schema": 1, "task": "CasimirAlpha",
        "parameters": {"geometry": "interval", "n_max": 2000, "scheme": "both"},
        "output_format": "csv"})");
    auto rep = run_scenario(load_scenario(cfg));
    const std::string path = "/tmp/vacbound_test_out.csv";
    emit_report(rep, path, OutputFormat::Csv);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("n_max,", 0) == 0);
    double prev = 0.0;
    int rows = 0;
    for (std::string line; std::getline(in, line) && !line.empty();) {
        const double v = std::stod(line.substr(0, line.find(',')));
        CHECK(v > prev);
        prev = v;
        ++rows;
    }
    CHECK(rows >= 2);
}

TEST_CASE("emitted json reports diff as identical, perturbed ones do not") {
    auto cfg = write_tmp("diff", R"({"schema": 1, "task": "OscillatorTrace",
        "parameters": {"m": 2.0, "A": 1.0, "periods": 3}})");
    auto rep = run_scenario(load_scenario(cfg));
    emit_report(rep, "/tmp/vacbound_diff_a.json", OutputFormat::Json);
    emit_report(rep, "/tmp/vacbound_diff_b.json", OutputFormat::Json);

    // wall clock may differ between runs; byte-identical files must not
    CHECK(diff_reports("/tmp/vacbound_diff_a.json", "/tmp/vacbound_diff_b.json").empty());

    auto j = nlohmann::json::parse(std::ifstream("/tmp/vacbound_diff_b.json"));
    j["results"]["mean_trace"] = 0.0;
    std::ofstream("/tmp/vacbound_diff_c.json") << j.dump(2);
    auto diffs = diff_reports("/tmp/vacbound_diff_a.json", "/tmp/vacbound_diff_c.json");
    CHECK(!diffs.empty());
    bool found = false;
    for (const auto& d : diffs)
        if (d.find("mean_trace") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("task failures wrap module errors with context") {
    auto cfg = write_tmp("fail", R"({"schema": 1, "task": "WallAudit",
        "parameters": {"E_v": -0.1, "R": 1.0, "t": 0.5}})");
    CHECK_THROWS_AS(run_scenario(load_scenario(cfg)), TaskFailed);
}
