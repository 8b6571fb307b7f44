#include "trimer/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "trimer/errors.hpp"
#include "trimer/mass_params.hpp"
#include "trimer/schur.hpp"
#include "trimer/spectral.hpp"

namespace trimer {

namespace {

using ojson = nlohmann::ordered_json;
constexpr double kTwoPi2 = 2.0 * std::numbers::pi * std::numbers::pi;

std::string normalise_key(std::string k) {
    for (char& c : k) {
        if (c == '-') c = '_';
    }
    return k;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& c) {
    struct V {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(long long i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(V{}, c);
}

ojson cell_json(const Cell& c) {
    struct V {
        ojson operator()(std::monostate) const { return nullptr; }
        ojson operator()(double d) const { return std::isfinite(d) ? ojson(d) : ojson(nullptr); }
        ojson operator()(long long i) const { return i; }
        ojson operator()(bool b) const { return b; }
        ojson operator()(const std::string& s) const { return s; }
    };
    return std::visit(V{}, c);
}

Cell opt(double v) { return std::isnan(v) ? Cell{} : Cell{v}; }

class Stopwatch {
public:
    Stopwatch(Report& r, std::string name) : r_(r), name_(std::move(name)), t0_(std::chrono::steady_clock::now()) {}
    ~Stopwatch() {
        if (!r_.config.timings) return;
        const std::chrono::duration<double> d = std::chrono::steady_clock::now() - t0_;
        r_.timings[name_] = d.count();
    }

private:
    Report& r_;
    std::string name_;
    std::chrono::steady_clock::time_point t0_;
};

SolverOptions solver_options(const RunConfig& c) {
    SolverOptions o;
    o.n = static_cast<std::size_t>(c.grid_n);
    o.grid.scale = c.scale;
    return o;
}

Report start(const RunConfig& c, std::vector<std::string> columns) {
    Report r;
    r.command = c.command;
    r.config = c;
    r.columns = std::move(columns);
    return r;
}

} // namespace

OutputFormat parse_format(const std::string& tag) {
    if (tag == "csv") return OutputFormat::csv;
    if (tag == "json") return OutputFormat::json;
    throw ConfigError("unknown output format '" + tag + "'");
}

void RunConfig::validate() const {
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    if (grid_n < 16) throw DomainError("grid-n must be at least 16");
    if (!(scale > 0.0)) throw DomainError("scale must be positive");
    if (count < 1) throw DomainError("count must be positive");
    if (command == "sweep") {
        if (points < 1) throw DomainError("sweep needs at least one mass point");
        if (!(m_min > 0.0) || !(m_max >= m_min)) throw DomainError("sweep needs 0 < m-min <= m-max");
        if (points > 1 && !(m_max > m_min)) throw DomainError("sweep with several points needs m-max > m-min");
    }
    if (command == "certify" && ell != 1 && ell != 3) throw DomainError("certify supports ell 1 or 3");
}

void apply_json(RunConfig& c, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            const std::string k = normalise_key(key);
            if (k == "tol") c.tol = v.get<double>();
            else if (k == "m") c.m = v.get<double>();
            else if (k == "ell") c.ell = v.get<int>();
            else if (k == "m_min") c.m_min = v.get<double>();
            else if (k == "m_max") c.m_max = v.get<double>();
            else if (k == "points") c.points = v.get<int>();
            else if (k == "alpha") c.alpha = v.get<double>();
            else if (k == "lambda") c.lambda = v.get<double>();
            else if (k == "indices") c.indices = v.get<std::vector<int>>();
            else if (k == "count") c.count = v.get<int>();
            else if (k == "grid_n") c.grid_n = v.get<int>();
            else if (k == "scale") c.scale = v.get<double>();
            else if (k == "format") c.format = parse_format(v.get<std::string>());
            else if (k == "output") c.output = v.get<std::string>();
            else if (k == "timings") c.timings = v.get<bool>();
            else throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config value has the wrong type: ") + e.what());
    }
}

ojson config_to_json(const RunConfig& c) {
    ojson j;
    j["command"] = c.command;
    j["tol"] = c.tol;
    if (c.command == "certify" || c.command == "spectrum" || c.command == "witness") j["m"] = c.m;
    if (c.command == "certify" || c.command == "sweep" || c.command == "spectrum") j["ell"] = c.ell;
    if (c.command == "sweep") {
        j["m_min"] = c.m_min;
        j["m_max"] = c.m_max;
        j["points"] = c.points;
    }
    if (c.command == "sweep" || c.command == "spectrum" || c.command == "witness") j["alpha"] = c.alpha;
    if (c.command == "witness") {
        j["lambda"] = c.lambda;
        j["indices"] = c.indices;
    }
    if (c.command == "spectrum") j["count"] = c.count;
    if (c.command == "sweep" || c.command == "spectrum") {
        j["grid_n"] = c.grid_n;
        j["scale"] = c.scale;
    }
    j["format"] = c.format == OutputFormat::csv ? "csv" : "json";
    return j;
}

Report cmd_thresholds(const RunConfig& c) {
    Report r = start(c, {"quantity", "value", "reciprocal", "tolerance"});
    auto row = [&](const std::string& name, double v) {
        r.rows.push_back({name, v, 1.0 / v, c.tol});
    };
    {
        Stopwatch s(r, "m_star");
        row("m_star", critical_mass_star(c.tol));
    }
    {
        Stopwatch s(r, "m_double_star");
        row("m_double_star", critical_mass_double_star(c.tol));
    }
    {
        Stopwatch s(r, "m_existence");
        row("m_existence", existence_threshold({}, c.tol));
    }
    {
        Stopwatch s(r, "absence_root");
        row("absence_root", absence_threshold(c.tol));
    }
    r.summary["absence_root_note"] = "upper bound on the absence threshold, not the threshold itself";
    r.summary["trial"] = {{"a", 1.2}, {"b", 0.05}};
    r.summary["quadrature_tolerance"] = 1e-12;
    return r;
}

Report cmd_certify(const RunConfig& c) {
    Report r = start(c, {"ell", "m", "bound", "certifies_absence", "mu", "nu", "r_max", "a_max", "multiplier",
                         "r_max_scan", "a_max_scan"});
    Stopwatch s(r, "certify");
    const Certificate k = c.ell == 1 ? certify_ell1(c.m) : certify_ell3(c.m);
    r.rows.push_back({static_cast<long long>(k.ell), k.m, k.bound, k.certifies_absence, k.mu, k.nu, k.r_max,
                      k.a_max, k.multiplier, k.r_max_scan, k.a_max_scan});
    return r;
}

Report cmd_sweep(const RunConfig& c) {
    Report r = start(c, {"m", "epsilon_min", "epsilon_min_converged", "n_bound", "energy_ground", "in_window",
                         "window_lower", "window_upper", "c1_bound", "c1_certifies_absence", "c3_bound"});
    const SolverOptions o = solver_options(c);
    Stopwatch s(r, "sweep");
    std::vector<double> masses;
    for (int i = 0; i < c.points; ++i) {
        masses.push_back(c.points == 1 ? c.m_min : c.m_min + (c.m_max - c.m_min) * i / (c.points - 1));
    }
    double prev = -1.0;
    bool monotone = true;
    for (double m : masses) {
        const BoundStates b = bound_states(m, c.alpha, c.ell, o);
        const Certificate k1 = certify_ell1(m);
        const Certificate k3 = certify_ell3(m);
        const SpectralWindow w = spectral_window(m, c.alpha);
        Cell energy, in_window;
        if (!b.states.empty()) {
            energy = b.states.front().energy;
            in_window = b.states.front().in_window;
        }
        if (std::isnan(b.epsilon_min)) {
            // alpha >= 0: no eigenproblem solved, report the operator bottom anyway.
            const auto spec = sector_spectrum(assemble_t1(c.ell, mass_params(m), solver_grid(o)), 1, o);
            r.rows.push_back({m, spec.front().epsilon, spec.front().converged, 0LL, energy, in_window, opt(w.lower),
                              opt(w.upper), k1.bound, k1.certifies_absence, k3.bound});
            if (spec.front().epsilon <= prev) monotone = false;
            prev = spec.front().epsilon;
            continue;
        }
        r.rows.push_back({m, b.epsilon_min, b.epsilon_min_converged, static_cast<long long>(b.states.size()), energy,
                          in_window, opt(w.lower), opt(w.upper), k1.bound, k1.certifies_absence, k3.bound});
        if (b.epsilon_min < prev * (1.0 - 1e-9)) monotone = false;
        prev = b.epsilon_min;
    }
    r.summary["threshold"] = kTwoPi2;
    r.summary["epsilon_min_monotone"] = monotone;
    r.summary["gate_tolerance"] = o.gate_tol;
    r.summary["threshold_margin"] = o.threshold_margin;
    if (!(c.alpha < 0.0)) r.warnings.push_back("alpha >= 0: the discrete spectrum is empty");
    return r;
}

Report cmd_spectrum(const RunConfig& c) {
    Report r = start(c, {"index", "epsilon", "below_threshold", "converged", "drift", "energy", "in_window"});
    const SolverOptions o = solver_options(c);
    Stopwatch s(r, "spectrum");
    const MassParams p = mass_params(c.m);
    const auto spec = sector_spectrum(assemble_t1(c.ell, p, solver_grid(o)), c.count, o);
    const SpectralWindow w = spectral_window(c.m, c.alpha);
    long long i = 0;
    for (const Eigenpair& e : spec) {
        Cell energy, in_window;
        if (e.converged && c.alpha < 0.0) {
            const double E = -c.alpha * c.alpha / (e.epsilon * e.epsilon);
            energy = E;
            in_window = w.contains(E);
        }
        r.rows.push_back({i++, e.epsilon, e.below_threshold, e.converged, opt(e.drift), energy, in_window});
    }
    r.summary["threshold"] = kTwoPi2;
    r.summary["window"] = {{"lower", w.discrete_empty ? ojson(nullptr) : ojson(w.lower)},
                           {"upper", w.discrete_empty ? ojson(nullptr) : ojson(w.upper)},
                           {"essential_lower", w.essential_lower}};
    r.summary["gate_tolerance"] = o.gate_tol;
    if (!(c.alpha < 0.0)) r.warnings.push_back("alpha >= 0: the discrete spectrum is empty");
    return r;
}

Report cmd_witness(const RunConfig& c) {
    Report r = start(c, {"n", "residual_norm", "h_minus_half_sq", "gram_next"});
    Stopwatch s(r, "witness");
    const WitnessResult w = witness_sequence(c.m, c.alpha, c.lambda, c.indices);
    for (std::size_t i = 0; i < w.rows.size(); ++i) {
        const Cell g = i < w.gram.size() ? Cell{w.gram[i].value} : Cell{};
        r.rows.push_back({static_cast<long long>(w.rows[i].n), w.rows[i].residual_norm, w.rows[i].h_minus_half_sq, g});
    }
    bool residual_decay = true, gram_decay = true;
    for (std::size_t i = 1; i < w.rows.size(); ++i) {
        if (!(w.rows[i].residual_norm < w.rows[i - 1].residual_norm)) residual_decay = false;
    }
    for (std::size_t i = 1; i < w.gram.size(); ++i) {
        if (!(std::abs(w.gram[i].value) < std::abs(w.gram[i - 1].value))) gram_decay = false;
    }
    if (w.rows.size() < 2) {
        r.warnings.push_back("single index: decay checks skipped");
    } else if (w.gram.size() < 2) {
        r.warnings.push_back("two indices: gram decay check skipped");
    }
    r.summary["r0"] = w.r0;
    r.summary["h_minus_half_limit"] = w.h_minus_half_limit;
    r.summary["residual_decreasing"] = residual_decay;
    r.summary["gram_decreasing"] = gram_decay;
    r.success = residual_decay && gram_decay;
    return r;
}

Report run_command(const RunConfig& c) {
    c.validate();
    if (c.command == "thresholds") return cmd_thresholds(c);
    if (c.command == "certify") return cmd_certify(c);
    if (c.command == "sweep") return cmd_sweep(c);
    if (c.command == "spectrum") return cmd_spectrum(c);
    if (c.command == "witness") return cmd_witness(c);
    throw ConfigError("unknown command '" + c.command + "'");
}

std::string render_csv(const Report& r) {
    std::string out;
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_field(r.columns[i]);
    }
    out += "\r\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_field(cell_text(row[i]));
        }
        out += "\r\n";
    }
    return out;
}

std::string render_json(const Report& r) {
    ojson j;
    j["software"] = {{"name", kSoftwareName}, {"version", kSoftwareVersion}, {"schema_version", kSchemaVersion}};
    j["command"] = r.command;
    j["config"] = config_to_json(r.config);
    j["columns"] = r.columns;
    ojson rows = ojson::array();
    for (const auto& row : r.rows) {
        ojson o = ojson::object();
        for (std::size_t i = 0; i < row.size(); ++i) o[r.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    j["summary"] = r.summary;
    j["warnings"] = r.warnings;
    if (r.config.timings) j["timings_seconds"] = r.timings;
    return j.dump(2) + "\n";
}

std::string render(const Report& r) {
    return r.config.format == OutputFormat::csv ? render_csv(r) : render_json(r);
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IoError("failed to write to standard output");
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open output file '" + path + "'");
    f << text;
    f.close();
    if (!f) throw IoError("failed to write output file '" + path + "'");
}

} // namespace trimer
