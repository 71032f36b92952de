#ifndef VACBOUND_SCENARIO_HPP
#define VACBOUND_SCENARIO_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vacbound/errors.hpp"

namespace vacbound {

enum class TaskKind {
    CheckConditions,
    CasimirAlpha,
    WallAudit,
    TraceChain,
    OscillatorTrace,
    FullPipeline,
};
enum class OutputFormat { Json, Csv };

const char* to_string(TaskKind t);
TaskKind task_from_string(const std::string& s);  // throws ConfigInvalid

/// Declarative scenario (schema version 1).  Parameters are a flat
/// key/value map validated against the per-task schema before execution.
struct Scenario {
    int schema = 1;
    std::string name;
    TaskKind task = TaskKind::CheckConditions;
    std::map<std::string, double> numbers;
    std::map<std::string, std::string> strings;
    std::uint64_t seed = 0;
    OutputFormat output_format = OutputFormat::Json;

    double number(const std::string& key) const;           // throws ConfigInvalid
    double number_or(const std::string& key, double d) const;
    std::string string_or(const std::string& key, const std::string& d) const;
};

Scenario load_scenario(const std::string& config_path);

/// Order-preserving JSON-like tree; doubles serialize with 17 significant
/// digits so payloads are byte-stable.
class ReportNode {
public:
    using Object = std::vector<std::pair<std::string, ReportNode>>;
    using Array = std::vector<ReportNode>;

    ReportNode() : v_(nullptr) {}
    ReportNode(bool b) : v_(b) {}
    ReportNode(double d) : v_(d) {}
    ReportNode(std::int64_t i) : v_(i) {}
    ReportNode(int i) : v_(std::int64_t(i)) {}
    ReportNode(std::uint64_t u) : v_(std::int64_t(u)) {}
    ReportNode(const char* s) : v_(std::string(s)) {}
    ReportNode(std::string s) : v_(std::move(s)) {}
    ReportNode(Array a) : v_(std::move(a)) {}

    static ReportNode object() {
        ReportNode n;
        n.v_ = Object{};
        return n;
    }

    ReportNode& set(const std::string& key, ReportNode value);
    const ReportNode* find(const std::string& key) const;
    bool is_object() const { return std::holds_alternative<Object>(v_); }
    bool is_array() const { return std::holds_alternative<Array>(v_); }
    const Object& as_object() const { return std::get<Object>(v_); }
    const Array& as_array() const { return std::get<Array>(v_); }

    std::string to_json(int indent = 0) const;
    void visit_scalar(std::ostream& os) const;  // null/bool/number/string only

private:
    std::variant<std::nullptr_t, bool, double, std::int64_t, std::string, Array, Object> v_;
};

struct Report {
    ReportNode root;       // { scenario, results, provenance }
    int exit_code = 0;     // 0 pass, 2 violated, 3 inconclusive/saturated

    // deterministic portion compared across reruns (provenance excluded:
    // it carries wall-clock)
    std::string results_payload() const;
};

/// Dispatches the scenario to the module pipelines.  Module errors are
/// rethrown as TaskFailed with scenario context; physics-negative
/// outcomes are reported in-band via verdicts and exit_code.
Report run_scenario(const Scenario& scenario, unsigned n_threads = 1);

/// Serializes to destination ("-" = stdout).  Csv flattens scalar results
/// to key,value rows and emits any "table" array as a header + rows block.
void emit_report(const Report& report, const std::string& destination, OutputFormat format);

/// Structural diff of two JSON report files; returns the list of paths
/// whose values differ (empty = identical structure and values).
std::vector<std::string> diff_reports(const std::string& path_a, const std::string& path_b);

}  // namespace vacbound

#endif
