#include "vacbound/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "vacbound/casimir.hpp"
#include "vacbound/energy_conditions.hpp"
#include "vacbound/tensor.hpp"
#include "vacbound/trace_method.hpp"
#include "vacbound/wall.hpp"

namespace vacbound {

namespace {

// CODATA 2018
constexpr double kHbarJs = 1.054571817e-34;
constexpr double kCMps = 299792458.0;
constexpr const char* kVersion = "0.1.0";

std::string fmt_double(double d) {
    if (!std::isfinite(d)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    // bare integers and specials still need to parse as JSON numbers
    return buf;
}

void json_escape(std::ostream& os, const std::string& s) {
    os << '"';
    for (char c : s) {
        switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\t': os << "\\t"; break;
            case '\r': os << "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    os << buf;
                } else {
                    os << c;
                }
        }
    }
    os << '"';
}

}  // namespace

const char* to_string(TaskKind t) {
    switch (t) {
        case TaskKind::CheckConditions: return "CheckConditions";
        case TaskKind::CasimirAlpha: return "CasimirAlpha";
        case TaskKind::WallAudit: return "WallAudit";
        case TaskKind::TraceChain: return "TraceChain";
        case TaskKind::OscillatorTrace: return "OscillatorTrace";
        case TaskKind::FullPipeline: return "FullPipeline";
    }
    return "?";
}

TaskKind task_from_string(const std::string& s) {
    for (TaskKind t : {TaskKind::CheckConditions, TaskKind::CasimirAlpha, TaskKind::WallAudit,
                       TaskKind::TraceChain, TaskKind::OscillatorTrace, TaskKind::FullPipeline})
        if (s == to_string(t)) return t;
    throw ConfigInvalid("unknown task '" + s + "'");
}

double Scenario::number(const std::string& key) const {
    auto it = numbers.find(key);
    if (it == numbers.end())
        throw ConfigInvalid("task " + std::string(to_string(task)) +
                            ": missing required parameter '" + key + "'");
    return it->second;
}

double Scenario::number_or(const std::string& key, double d) const {
    auto it = numbers.find(key);
    return it == numbers.end() ? d : it->second;
}

std::string Scenario::string_or(const std::string& key, const std::string& d) const {
    auto it = strings.find(key);
    return it == strings.end() ? d : it->second;
}

Scenario load_scenario(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw ConfigInvalid("cannot open config file: " + config_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigInvalid(config_path + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigInvalid(config_path + ": top level must be an object");
    if (!j.contains("schema") || !j["schema"].is_number_integer() || j["schema"] != 1)
        throw ConfigInvalid(config_path + ": missing or unsupported 'schema' (expected 1)");
    if (!j.contains("task") || !j["task"].is_string())
        throw ConfigInvalid(config_path + ": missing 'task'");

    Scenario s;
    s.schema = 1;
    s.task = task_from_string(j["task"].get<std::string>());
    s.name = j.value("name", std::string(to_string(s.task)));
    s.seed = j.value("seed", std::uint64_t(0));
    const std::string fmt = j.value("output_format", std::string("json"));
    if (fmt == "json")
        s.output_format = OutputFormat::Json;
    else if (fmt == "csv")
        s.output_format = OutputFormat::Csv;
    else
        throw ConfigInvalid(config_path + ": output_format must be 'json' or 'csv'");

    if (j.contains("parameters")) {
        const auto& p = j["parameters"];
        if (!p.is_object()) throw ConfigInvalid(config_path + ": 'parameters' must be an object");
        for (auto it = p.begin(); it != p.end(); ++it) {
            if (it->is_number())
                s.numbers[it.key()] = it->get<double>();
            else if (it->is_string())
                s.strings[it.key()] = it->get<std::string>();
            else
                throw ConfigInvalid(config_path + ": parameter '" + it.key() +
                                    "' must be a number or string");
        }
    }
    return s;
}

// ---------------------------------------------------------------------------

ReportNode& ReportNode::set(const std::string& key, ReportNode value) {
    if (!is_object()) v_ = Object{};
    auto& obj = std::get<Object>(v_);
    for (auto& [k, v] : obj)
        if (k == key) {
            v = std::move(value);
            return *this;
        }
    obj.emplace_back(key, std::move(value));
    return *this;
}

const ReportNode* ReportNode::find(const std::string& key) const {
    if (!is_object()) return nullptr;
    for (const auto& [k, v] : as_object())
        if (k == key) return &v;
    return nullptr;
}

namespace {

void write_json(std::ostream& os, const ReportNode& n, int indent, int depth);

void write_indent(std::ostream& os, int indent, int depth) {
    if (indent > 0) {
        os << '\n';
        for (int i = 0; i < indent * depth; ++i) os << ' ';
    }
}

struct JsonVisitor {
    std::ostream& os;
    int indent, depth;
    void operator()(std::nullptr_t) const { os << "null"; }
    void operator()(bool b) const { os << (b ? "true" : "false"); }
    void operator()(double d) const { os << fmt_double(d); }
    void operator()(std::int64_t i) const { os << i; }
    void operator()(const std::string& s) const { json_escape(os, s); }
    void operator()(const ReportNode::Array& a) const {
        os << '[';
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) os << ',';
            write_indent(os, indent, depth + 1);
            write_json(os, a[i], indent, depth + 1);
        }
        if (!a.empty()) write_indent(os, indent, depth);
        os << ']';
    }
    void operator()(const ReportNode::Object& o) const {
        os << '{';
        for (std::size_t i = 0; i < o.size(); ++i) {
            if (i) os << ',';
            write_indent(os, indent, depth + 1);
            json_escape(os, o[i].first);
            os << (indent > 0 ? ": " : ":");
            write_json(os, o[i].second, indent, depth + 1);
        }
        if (!o.empty()) write_indent(os, indent, depth);
        os << '}';
    }
};

void write_json(std::ostream& os, const ReportNode& n, int indent, int depth) {
    // the variant lives privately inside ReportNode; round-trip through the
    // public accessors
    if (n.is_object()) {
        JsonVisitor{os, indent, depth}(n.as_object());
    } else if (n.is_array()) {
        JsonVisitor{os, indent, depth}(n.as_array());
    } else {
        n.visit_scalar(os);
    }
}

}  // namespace

std::string ReportNode::to_json(int indent) const {
    std::ostringstream os;
    write_json(os, *this, indent, 0);
    return os.str();
}

void ReportNode::visit_scalar(std::ostream& os) const {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::nullptr_t>)
                os << "null";
            else if constexpr (std::is_same_v<T, bool>)
                os << (x ? "true" : "false");
            else if constexpr (std::is_same_v<T, double>)
                os << fmt_double(x);
            else if constexpr (std::is_same_v<T, std::int64_t>)
                os << x;
            else if constexpr (std::is_same_v<T, std::string>)
                json_escape(os, x);
        },
        v_);
}

std::string Report::results_payload() const {
    const ReportNode* r = root.find("results");
    return r ? r->to_json(2) : std::string();
}

// ---------------------------------------------------------------------------
// task pipelines

namespace {

int exit_for(ConditionStatus s) {
    switch (s) {
        case ConditionStatus::Satisfied: return 0;
        case ConditionStatus::Violated: return 2;
        case ConditionStatus::Saturated: return 3;
    }
    return 1;
}

int exit_for(PositivityVerdict v) {
    switch (v) {
        case PositivityVerdict::PositiveTotal: return 0;
        case PositivityVerdict::ViolatesSTEC: return 2;
        case PositivityVerdict::Inconclusive: return 3;
    }
    return 1;
}

ReportNode verdict_node(const ConditionVerdict& v) {
    ReportNode n = ReportNode::object();
    n.set("status", to_string(v.status));
    n.set("margin", v.margin);
    if (v.witness) {
        ReportNode::Array w;
        for (double x : *v.witness) w.emplace_back(x);
        n.set("witness", ReportNode(std::move(w)));
    }
    return n;
}

ReportNode audit_node(const PositivityReport& rep) {
    ReportNode n = ReportNode::object();
    n.set("verdict", to_string(rep.verdict));
    n.set("E_v", rep.E_v);
    n.set("trace_integral", rep.trace_integral);
    n.set("M_w", rep.M_w);
    n.set("total_energy", rep.E_v + rep.M_w);
    n.set("equilibrium_residual", rep.equilibrium_residual);
    n.set("stec_margin_min", rep.stec_margin_min);
    return n;
}

CavitySpec cavity_from(const Scenario& sc) {
    const std::string geom = sc.string_or("geometry", "interval");
    const double R = sc.number_or("R", 1.0);
    if (geom == "interval") return CavitySpec::interval(R);
    if (geom == "slab") return CavitySpec::slab(R);
    if (geom == "box")
        return CavitySpec::box(
            R, {sc.number_or("xi1", 1.0), sc.number_or("xi2", 1.0), sc.number_or("xi3", 1.0)});
    throw ConfigInvalid("geometry must be interval, slab, or box (got '" + geom + "')");
}

int run_check_conditions(const Scenario& sc, ReportNode& results, unsigned n_threads) {
    const auto T = StressEnergyTensor::diagonal(sc.number("rho"), sc.number("p1"),
                                                sc.number("p2"), sc.number("p3"));
    const ConditionProfile prof = classify(T);

    CovariantSamplingParams params;
    params.n_samples = std::size_t(sc.number_or("n_samples", 10000));
    params.seed = sc.seed;
    params.n_threads = n_threads;

    ReportNode conds = ReportNode::object();
    for (const auto& [kind, verdict] : prof.verdicts) {
        ReportNode n = verdict_node(verdict);
        n.set("covariant", verdict_node(covariant_verify(T, kind, params)));
        conds.set(to_string(kind), std::move(n));
    }
    results.set("conditions", std::move(conds));
    const ConditionStatus stec = prof.verdicts.at(ConditionKind::STEC).status;
    results.set("verdict", to_string(stec));
    return exit_for(stec);
}

int run_casimir_alpha(const Scenario& sc, ReportNode& results) {
    const CavitySpec cavity = cavity_from(sc);
    const std::string scheme =
        sc.string_or("scheme", cavity.kind == CavityKind::Slab ? "zeta" : "both");

    const VacuumEnergyResult z = vacuum_energy_zeta(cavity);
    results.set("alpha_zeta", z.alpha);
    results.set("alpha_zeta_error", z.error_estimate);
    results.set("E_v_natural", z.E_v);
    results.set("alpha_in_expected_range", std::abs(z.alpha) >= 1e-4 && std::abs(z.alpha) <= 1e-1);

    if (scheme == "cutoff" || scheme == "both") {
        if (cavity.kind == CavityKind::Slab)
            throw ConfigInvalid("cutoff scheme is not defined for the slab geometry");
        const std::size_t n_max =
            std::size_t(sc.number_or("n_max", double(recommended_truncation(cavity))));
        ReportNode::Array table;
        double alpha_cut = 0.0, err_cut = 0.0;
        for (std::size_t n : {n_max / 4, n_max / 2, n_max}) {
            if (n < 8) continue;
            const ModeSpectrum sp = enumerate_modes(cavity, n);
            const VacuumEnergyResult c = vacuum_energy_cutoff(sp, default_cutoffs(sp), cavity.R);
            ReportNode row = ReportNode::object();
            row.set("n_max", std::int64_t(n));
            row.set("modes", std::int64_t(sp.epsilons.size()));
            row.set("alpha_cutoff", c.alpha);
            row.set("error_estimate", c.error_estimate);
            table.push_back(std::move(row));
            alpha_cut = c.alpha;
            err_cut = c.error_estimate;
        }
        results.set("alpha_cutoff", alpha_cut);
        results.set("alpha_cutoff_error", err_cut);
        results.set("cross_scheme_rel_diff", std::abs(alpha_cut - z.alpha) / std::abs(z.alpha));
        results.set("table", ReportNode(std::move(table)));
    } else if (scheme != "zeta") {
        throw ConfigInvalid("scheme must be zeta, cutoff, or both (got '" + scheme + "')");
    }

    if (sc.numbers.count("R_si_m")) {
        const double R_si = sc.number("R_si_m");
        if (R_si <= 0) throw ConfigInvalid("R_si_m must be positive");
        const double p = cavity.kind == CavityKind::Slab ? 3.0 : 1.0;
        results.set("E_v_si_J", z.alpha * kHbarJs * kCMps / std::pow(R_si, p));
    }
    return 0;
}

WallMesh scenario_mesh(const Scenario& sc, ThinShellSpec& shell, double E_v) {
    shell = equilibrium_shell(E_v, sc.number_or("R", 1.0), sc.number_or("t", 0.01));
    if (sc.numbers.count("rho_w"))
        shell.rho_w = sc.number("rho_w");
    else
        shell.rho_w = sc.number_or("rho_w_factor", 3.0) * shell.P;
    return make_shell_mesh(shell, std::size_t(sc.number_or("n_theta", 64)),
                           std::size_t(sc.number_or("n_phi", 128)));
}

int run_wall_audit(const Scenario& sc, ReportNode& results, unsigned n_threads) {
    const double E_v = sc.number("E_v");
    ThinShellSpec shell;
    const WallMesh mesh = scenario_mesh(sc, shell, E_v);
    const PositivityReport rep = positivity_audit(E_v, mesh, n_threads);
    results.set("P", shell.P);
    results.set("rho_w", shell.rho_w);
    results.set("audit", audit_node(rep));
    results.set("verdict", to_string(rep.verdict));
    return exit_for(rep.verdict);
}

int run_trace_chain(const Scenario& sc, ReportNode& results, unsigned) {
    const double E_v = sc.number("E_v");
    const double field_trace = sc.number_or("field_trace_integral", E_v);
    ThinShellSpec shell;
    const WallMesh mesh = scenario_mesh(sc, shell, E_v);
    results.set("P", shell.P);
    results.set("rho_w", shell.rho_w);
    results.set("field_trace_integral", field_trace);
    try {
        const PositivityReport rep = trace_bound_chain(E_v, field_trace, mesh);
        results.set("audit", audit_node(rep));
        results.set("verdict", to_string(rep.verdict));
        return exit_for(rep.verdict);
    } catch (const ChainStepFailed& e) {
        results.set("verdict", "ChainStepFailed");
        results.set("failed_step", e.failed_step);
        results.set("detail", e.what());
        return 2;
    }
}

int run_oscillator(const Scenario& sc, ReportNode& results) {
    const double m = sc.number("m");
    const double A = sc.number_or("A", 1.0);
    const TraceIdentityResult r = scalar_trace_identity(
        m, A, int(sc.number_or("periods", 10)), int(sc.number_or("steps_per_period", 4096)));
    results.set("mean_trace", r.mean_trace);
    results.set("mass_term", r.mass_term);
    results.set("discrepancy", r.discrepancy);
    return 0;
}

int run_full_pipeline(const Scenario& sc, ReportNode& results, unsigned n_threads) {
    const CavitySpec cavity = cavity_from(sc);
    if (cavity.kind == CavityKind::Slab)
        throw ConfigInvalid("FullPipeline needs a finite-energy cavity (interval or box)");
    const VacuumEnergyResult z = vacuum_energy_zeta(cavity);
    results.set("alpha", z.alpha);
    results.set("E_v", z.E_v);

    ThinShellSpec shell;
    const WallMesh mesh = scenario_mesh(sc, shell, z.E_v);
    results.set("P", shell.P);
    results.set("rho_w", shell.rho_w);

    const PositivityReport rep = positivity_audit(z.E_v, mesh, n_threads);
    results.set("audit", audit_node(rep));
    try {
        const PositivityReport chain = trace_bound_chain(z.E_v, z.E_v, mesh);
        results.set("chain", audit_node(chain));
        results.set("verdict", to_string(chain.verdict));
        return exit_for(chain.verdict);
    } catch (const ChainStepFailed& e) {
        results.set("verdict", "ChainStepFailed");
        results.set("failed_step", e.failed_step);
        results.set("detail", e.what());
        return 2;
    }
}

}  // namespace

Report run_scenario(const Scenario& sc, unsigned n_threads) {
    const auto t0 = std::chrono::steady_clock::now();

    ReportNode echo = ReportNode::object();
    echo.set("schema", sc.schema);
    echo.set("name", sc.name);
    echo.set("task", to_string(sc.task));
    echo.set("seed", std::int64_t(sc.seed));
    ReportNode params = ReportNode::object();
    for (const auto& [k, v] : sc.numbers) params.set(k, v);
    for (const auto& [k, v] : sc.strings) params.set(k, v);
    echo.set("parameters", std::move(params));

    ReportNode results = ReportNode::object();
    int code = 0;
    try {
        switch (sc.task) {
            case TaskKind::CheckConditions:
                code = run_check_conditions(sc, results, n_threads);
                break;
            case TaskKind::CasimirAlpha:
                code = run_casimir_alpha(sc, results);
                break;
            case TaskKind::WallAudit:
                code = run_wall_audit(sc, results, n_threads);
                break;
            case TaskKind::TraceChain:
                code = run_trace_chain(sc, results, n_threads);
                break;
            case TaskKind::OscillatorTrace:
                code = run_oscillator(sc, results);
                break;
            case TaskKind::FullPipeline:
                code = run_full_pipeline(sc, results, n_threads);
                break;
        }
    } catch (const ConfigInvalid&) {
        throw;
    } catch (const Error& e) {
        throw TaskFailed("scenario '" + sc.name + "' (" + to_string(sc.task) + "): " + e.what());
    }

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    ReportNode prov = ReportNode::object();
    prov.set("version", kVersion);
    prov.set("seed", std::int64_t(sc.seed));
    prov.set("n_threads", std::int64_t(n_threads));
    ReportNode tol = ReportNode::object();
    tol.set("saturation_rel", kSaturationTolRel);
    tol.set("equilibrium_rel", 1e-6);
    tol.set("dilation", 1e-6);
    prov.set("tolerances", std::move(tol));
    ReportNode consts = ReportNode::object();
    consts.set("hbar_J_s", kHbarJs);
    consts.set("c_m_per_s", kCMps);
    prov.set("constants", std::move(consts));
    prov.set("wall_clock_s", secs);

    Report rep;
    rep.root = ReportNode::object();
    rep.root.set("scenario", std::move(echo));
    rep.root.set("results", std::move(results));
    rep.root.set("provenance", std::move(prov));
    rep.exit_code = code;
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

void write_csv_value(std::ostream& os, const ReportNode& n) {
    // scalar cells only; tables of scalars are the csv contract
    std::ostringstream tmp;
    n.visit_scalar(tmp);
    std::string s = tmp.str();
    if (!s.empty() && s.front() == '"') {
        // strip JSON quotes for csv
        s = s.substr(1, s.size() - 2);
    }
    os << s;
}

void write_csv(std::ostream& os, const Report& report) {
    const ReportNode* results = report.root.find("results");
    if (!results || !results->is_object()) return;
    const ReportNode* table = results->find("table");
    if (table && table->is_array() && !table->as_array().empty()) {
        const auto& rows = table->as_array();
        const auto& header = rows.front().as_object();
        for (std::size_t i = 0; i < header.size(); ++i)
            os << (i ? "," : "") << header[i].first;
        os << '\n';
        for (const auto& row : rows) {
            const auto& cells = row.as_object();
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) os << ',';
                write_csv_value(os, cells[i].second);
            }
            os << '\n';
        }
        return;
    }
    os << "key,value\n";
    for (const auto& [k, v] : results->as_object()) {
        if (v.is_object() || v.is_array()) continue;
        os << k << ',';
        write_csv_value(os, v);
        os << '\n';
    }
}

}  // namespace

void emit_report(const Report& report, const std::string& destination, OutputFormat format) {
    std::ostringstream os;
    if (format == OutputFormat::Json)
        os << report.root.to_json(2) << '\n';
    else
        write_csv(os, report);

    if (destination == "-" || destination.empty()) {
        std::cout << os.str();
        return;
    }
    std::ofstream out(destination, std::ios::binary);
    if (!out) throw IoFailure("cannot open for writing: " + destination);
    out << os.str();
    if (!out) throw IoFailure("write failed: " + destination);
}

namespace {

void diff_json(const nlohmann::json& a, const nlohmann::json& b, const std::string& path,
               std::vector<std::string>& out) {
    if (a.type() != b.type()) {
        out.push_back(path + " (type)");
        return;
    }
    if (a.is_object()) {
        for (auto it = a.begin(); it != a.end(); ++it) {
            if (!b.contains(it.key()))
                out.push_back(path + "/" + it.key() + " (only in first)");
            else
                diff_json(it.value(), b[it.key()], path + "/" + it.key(), out);
        }
        for (auto it = b.begin(); it != b.end(); ++it)
            if (!a.contains(it.key())) out.push_back(path + "/" + it.key() + " (only in second)");
        return;
    }
    if (a.is_array()) {
        const std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i)
            diff_json(a[i], b[i], path + "/" + std::to_string(i), out);
        for (std::size_t i = n; i < std::max(a.size(), b.size()); ++i)
            out.push_back(path + "/" + std::to_string(i) + " (length mismatch)");
        return;
    }
    if (a != b) out.push_back(path);
}

}  // namespace

std::vector<std::string> diff_reports(const std::string& path_a, const std::string& path_b) {
    auto load = [](const std::string& p) {
        std::ifstream in(p);
        if (!in) throw IoFailure("cannot open report: " + p);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw IoFailure(p + ": " + e.what());
        }
        return j;
    };
    std::vector<std::string> out;
    diff_json(load(path_a), load(path_b), "", out);
    return out;
}

}  // namespace vacbound
