// Scenario-driven front end for the vacuum-energy positivity checks.
//
// Exit codes: 0 pass (PositiveTotal / Satisfied), 1 execution error,
// 2 violated (ViolatesSTEC / Violated / chain failure), 3 inconclusive
// (Inconclusive / Saturated).  `report --diff` follows diff conventions
// instead: 0 identical, 1 different, 2 trouble.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vacbound/casimir.hpp"
#include "vacbound/scenario.hpp"

namespace {

int cmd_verify(const std::string& config, const std::string& out, const std::string& format,
               std::int64_t seed_override, unsigned threads) {
    vacbound::Scenario sc = vacbound::load_scenario(config);
    if (seed_override >= 0) sc.seed = std::uint64_t(seed_override);

    vacbound::OutputFormat fmt = sc.output_format;
    if (format == "json")
        fmt = vacbound::OutputFormat::Json;
    else if (format == "csv")
        fmt = vacbound::OutputFormat::Csv;
    else if (!format.empty())
        throw vacbound::ConfigInvalid("--format must be json or csv");

    const vacbound::Report rep = vacbound::run_scenario(sc, threads);
    vacbound::emit_report(rep, out, fmt);
    return rep.exit_code;
}

int cmd_modes(const std::string& geometry, double R, std::vector<double> xi, std::size_t n_max) {
    vacbound::CavitySpec cavity;
    if (geometry == "interval")
        cavity = vacbound::CavitySpec::interval(R);
    else if (geometry == "slab")
        cavity = vacbound::CavitySpec::slab(R);
    else if (geometry == "box")
        cavity = vacbound::CavitySpec::box(R, xi);
    else
        throw vacbound::ConfigInvalid("geometry must be interval, slab, or box");

    const vacbound::ModeSpectrum sp = vacbound::enumerate_modes(cavity, n_max);
    std::printf("# complete_to=%.17g truncation=%zu\n", sp.complete_to, sp.truncation);
    std::printf("epsilon,degeneracy\n");
    for (std::size_t i = 0; i < sp.epsilons.size(); ++i)
        std::printf("%.17g,%g\n", sp.epsilons[i], sp.degeneracies[i]);
    return 0;
}

int cmd_diff(const std::string& a, const std::string& b) {
    const std::vector<std::string> diffs = vacbound::diff_reports(a, b);
    if (diffs.empty()) {
        std::puts("reports identical");
        return 0;
    }
    for (const auto& d : diffs) std::puts(d.c_str());
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical checks that confined vacuum energy plus its wall is positive"};
    app.require_subcommand(1);

    std::string config, out = "-", format;
    std::int64_t seed = -1;
    unsigned threads = 1;
    auto* verify = app.add_subcommand("verify", "run a scenario config and emit a report");
    verify->add_option("config", config, "scenario config file (json, schema 1)")->required();
    verify->add_option("--out", out, "output path, '-' for stdout");
    verify->add_option("--format", format, "json or csv (default: from config)");
    verify->add_option("--seed", seed, "override the scenario seed");
    verify->add_option("--threads", threads, "worker threads (results are thread-count invariant)");

    std::string geometry = "interval";
    double R = 1.0;
    std::vector<double> xi{1.0, 1.0, 1.0};
    std::size_t n_max = 50;
    auto* modes = app.add_subcommand("modes", "list the Dirichlet mode spectrum as csv");
    modes->add_option("geometry", geometry, "interval, slab, or box")->required();
    modes->add_option("--R", R, "length scale");
    modes->add_option("--xi", xi, "box edge ratios (3 values)")->expected(3);
    modes->add_option("--n-max", n_max, "per-axis truncation");

    std::string diff_a, diff_b;
    auto* report = app.add_subcommand("report", "report utilities");
    auto* diff_opt = report->add_option("--diff", "structural diff of two json reports")
                         ->expected(2)
                         ->each([&](const std::string& s) {
                             (diff_a.empty() ? diff_a : diff_b) = s;
                         });
    report->needs(diff_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(config, out, format, seed, threads);
        if (modes->parsed()) return cmd_modes(geometry, R, xi, n_max);
        if (report->parsed()) return cmd_diff(diff_a, diff_b);
    } catch (const vacbound::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const vacbound::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return report->parsed() ? 2 : 1;
    }
    return 1;
}
