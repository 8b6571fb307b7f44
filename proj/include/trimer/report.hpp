#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace trimer {

inline constexpr const char* kSoftwareName = "trimer";
inline constexpr const char* kSoftwareVersion = "1.0.0";
/// Bumped whenever a CSV column is added, removed or reordered.
inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& tag);

/// Parameters of one CLI run. Fields irrelevant to a command are ignored.
struct RunConfig {
    std::string command;
    double tol = 1e-10;
    // certify / spectrum / witness
    double m = 1.0;
    int ell = 1;
    // sweep
    double m_min = 0.08;
    double m_max = 0.11;
    int points = 8;
    // sweep / spectrum / witness
    double alpha = -1.0;
    double lambda = 0.5;
    std::vector<int> indices{8, 16, 32, 64};
    int count = 5;
    // discretisation
    int grid_n = 400;
    double scale = 1.0;
    // output
    OutputFormat format = OutputFormat::csv;
    std::string output = "-";
    bool timings = false;

    /// Throws DomainError/ConfigError on invalid combinations.
    void validate() const;
};

/// Overlay keys of a flat JSON object onto a config; dashes and underscores in
/// keys are interchangeable. Unknown keys are a ConfigError.
void apply_json(RunConfig& config, const nlohmann::json& j);

nlohmann::ordered_json config_to_json(const RunConfig& config);

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Report {
    std::string command;
    RunConfig config;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    std::vector<std::string> warnings;
    nlohmann::ordered_json timings = nlohmann::ordered_json::object();
    bool success = true;  ///< drives the exit status of commands with a built-in check
};

Report cmd_thresholds(const RunConfig& config);
Report cmd_certify(const RunConfig& config);
Report cmd_sweep(const RunConfig& config);
Report cmd_spectrum(const RunConfig& config);
Report cmd_witness(const RunConfig& config);

/// Dispatch on config.command.
Report run_command(const RunConfig& config);

std::string render_csv(const Report& report);
std::string render_json(const Report& report);
std::string render(const Report& report);

/// Write text to a path, or to stdout for "-". Throws IoError.
void write_output(const std::string& path, const std::string& text);

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace trimer
