// Command-line front end: thresholds, certificates, sweeps, spectra and
// essential-spectrum witnesses, emitted as CSV or JSON.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trimer/errors.hpp"
#include "trimer/report.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Binding {
    CLI::Option* option;
    std::function<void(trimer::RunConfig&)> apply;
};

struct Command {
    CLI::App* app;
    std::vector<Binding> bindings;
};

template <class T>
void bind_option(Command& cmd, const std::string& flag, T& storage, T trimer::RunConfig::*field, const std::string& help) {
    CLI::Option* o = cmd.app->add_option(flag, storage, help);
    cmd.bindings.push_back({o, [&storage, field](trimer::RunConfig& c) { c.*field = storage; }});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral analysis of the 2+1 fermionic trimer with zero-range interaction"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format = "csv";
    std::string output = "-";
    bool timings = false;

    // Storage shared by all subcommands; only explicitly given flags are applied.
    trimer::RunConfig store;
    std::vector<Command> commands;

    auto add = [&](const std::string& name, const std::string& help) -> Command& {
        commands.push_back(Command{app.add_subcommand(name, help), {}});
        Command& c = commands.back();
        c.app->add_option("--config", config_path, "JSON file with flat key/value settings");
        c.app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        c.app->add_option("--output", output, "output path, '-' for standard output");
        c.app->add_flag("--timings", timings, "include wall-clock timings in JSON output");
        bind_option(c, "--tol", store.tol, &trimer::RunConfig::tol, "root tolerance");
        return c;
    };

    commands.reserve(5);
    add("thresholds", "critical masses m*, m**, the variational existence threshold and the absence root");

    Command& certify = add("certify", "Schur-test certificate in sector 1 or 3");
    bind_option(certify, "--ell", store.ell, &trimer::RunConfig::ell, "sector (1 or 3)");
    bind_option(certify, "--m", store.m, &trimer::RunConfig::m, "mass ratio");

    Command& sweep = add("sweep", "lowest eigenvalue, energies and certificates over a mass range");
    bind_option(sweep, "--m-min", store.m_min, &trimer::RunConfig::m_min, "first mass");
    bind_option(sweep, "--m-max", store.m_max, &trimer::RunConfig::m_max, "last mass");
    bind_option(sweep, "--points", store.points, &trimer::RunConfig::points, "number of masses");
    bind_option(sweep, "--alpha", store.alpha, &trimer::RunConfig::alpha, "coupling");
    bind_option(sweep, "--ell", store.ell, &trimer::RunConfig::ell, "odd sector");
    bind_option(sweep, "--grid-n", store.grid_n, &trimer::RunConfig::grid_n, "radial nodes");
    bind_option(sweep, "--scale", store.scale, &trimer::RunConfig::scale, "grid scale L");

    Command& spectrum = add("spectrum", "lowest eigenvalues of the sector operator at one mass");
    bind_option(spectrum, "--m", store.m, &trimer::RunConfig::m, "mass ratio");
    bind_option(spectrum, "--alpha", store.alpha, &trimer::RunConfig::alpha, "coupling");
    bind_option(spectrum, "--ell", store.ell, &trimer::RunConfig::ell, "odd sector");
    bind_option(spectrum, "--count", store.count, &trimer::RunConfig::count, "eigenvalues to list");
    bind_option(spectrum, "--grid-n", store.grid_n, &trimer::RunConfig::grid_n, "radial nodes");
    bind_option(spectrum, "--scale", store.scale, &trimer::RunConfig::scale, "grid scale L");

    Command& witness = add("witness", "singular-sequence witness of the essential spectrum edge");
    bind_option(witness, "--m", store.m, &trimer::RunConfig::m, "mass ratio");
    bind_option(witness, "--alpha", store.alpha, &trimer::RunConfig::alpha, "coupling (negative)");
    bind_option(witness, "--lambda", store.lambda, &trimer::RunConfig::lambda, "shift in (0, alpha^2/(4 pi^4)]");
    bind_option(witness, "--indices", store.indices, &trimer::RunConfig::indices, "sequence indices, each at least twice the previous");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        const Command* active = nullptr;
        for (const Command& c : commands) {
            if (c.app->parsed()) active = &c;
        }
        trimer::RunConfig config;
        config.command = active->app->get_name();
        if (config.command == "witness") config.alpha = -2.0 * std::numbers::pi * std::numbers::pi;

        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw trimer::IoError("cannot read config file '" + config_path + "'");
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw trimer::ConfigError(std::string("config file is not valid JSON: ") + e.what());
            }
            trimer::apply_json(config, j);
        }
        for (const Binding& b : active->bindings) {
            if (b.option->count() > 0) b.apply(config);
        }
        if (active->app->count("--format") > 0) config.format = trimer::parse_format(format);
        if (active->app->count("--output") > 0) config.output = output;
        if (timings) config.timings = true;

        const trimer::Report report = trimer::run_command(config);
        for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
        trimer::write_output(config.output, trimer::render(report));
        return report.success ? 0 : kExitNumeric;
    } catch (const trimer::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const trimer::AccuracyError& e) {
        std::cerr << "numerical error: " << e.what() << " (best estimate " << e.best_estimate() << ")\n";
        return kExitNumeric;
    } catch (const trimer::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const trimer::InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const trimer::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
