#include "trimer/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "trimer/errors.hpp"
#include "trimer/roots.hpp"
#include "trimer/special_functions.hpp"

namespace trimer {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi2 = 2.0 * kPi * kPi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double m_star() {
    static const double v = critical_mass_star(1e-13);
    return v;
}

struct Raw {
    Eigen::VectorXd eps;   // ascending
    Eigen::MatrixXd vecs;  // columns match eps, unit l2 norm
};

// With D the diagonal part and K the rest, M = D^{1/2} (I + D^{-1/2} K D^{-1/2}) D^{1/2}.
// Solving D^{-1} u = tau A u, A = I + D^{-1/2} K D^{-1/2}, keeps the unbounded
// diagonal out of the roundoff: eps = 1/tau, v = D^{-1/2} u.
Raw solve_pencil(const DiscretizedOperator& op, bool vectors) {
    const Eigen::Index n = op.matrix.rows();
    const Eigen::VectorXd isd = op.diagonal.array().rsqrt();
    Eigen::MatrixXd a = op.matrix;
    a.diagonal() -= op.diagonal;
    a = isd.asDiagonal() * a * isd.asDiagonal();
    a.diagonal().array() += 1.0;
    const Eigen::MatrixXd b = op.diagonal.cwiseInverse().asDiagonal();
    const int opts = (vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly) | Eigen::Ax_lBx;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(b, a, opts);
    if (es.info() != Eigen::Success) {
        throw NumericalError("generalized eigensolver failed (operator not positive definite?)");
    }
    Raw raw;
    raw.eps.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) raw.eps[i] = 1.0 / es.eigenvalues()[n - 1 - i];
    if (vectors) {
        raw.vecs.resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::VectorXd v = isd.asDiagonal() * es.eigenvectors().col(n - 1 - i);
            raw.vecs.col(i) = v / v.norm();
        }
    }
    return raw;
}

std::vector<double> candidates(const Eigen::VectorXd& eps, double margin) {
    std::vector<double> out;
    for (Eigen::Index i = 0; i < eps.size(); ++i) {
        if (eps[i] < kTwoPi2 * (1.0 - margin)) out.push_back(eps[i]);
    }
    return out;
}

void require_odd(int ell) {
    if (ell < 1 || ell % 2 == 0) {
        throw UnsupportedSectorError("even sectors carry no eigenvalues below threshold; ell must be odd");
    }
}

} // namespace

RadialGrid solver_grid(const SolverOptions& options) {
    if (options.n < 16) throw ConfigError("grid size must be at least 16");
    return gauss_grid(options.n, options.mapping, options.grid);
}

DiscretizedOperator assemble_t1(int ell, const MassParams& params, const RadialGrid& grid) {
    require_odd(ell);
    const std::size_t n = grid.size();
    if (n == 0 || grid.weights.size() != n) throw ShapeError("assemble_t1: malformed grid");
    DiscretizedOperator op{ell, params, grid, Eigen::MatrixXd(n, n), Eigen::VectorXd(n), 1.0};
    const auto& r = grid.nodes;
    Eigen::VectorXd s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::sqrt(grid.weights[i]) * r[i];
        op.diagonal[i] = kTwoPi2 * std::sqrt(params.nu * r[i] * r[i] + 1.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double q = params.mu * r[i] * r[j];
            const double z = (r[i] * r[i] + r[j] * r[j] + 1.0) / q;
            const double v = 2.0 * kPi * s[i] * s[j] * phi_ell(ell, z).value / q;
            op.matrix(i, j) = v;
            op.matrix(j, i) = v;
        }
        op.matrix(i, i) += op.diagonal[i];
    }
    return op;
}

std::vector<Eigenpair> sector_spectrum(const DiscretizedOperator& op, int count, const SolverOptions& options) {
    if (count < 0) throw DomainError("sector_spectrum: count must be non-negative");
    const Raw raw = solve_pencil(op, true);
    const Eigen::Index n = raw.eps.size();
    const Eigen::Index c = std::min<Eigen::Index>(count, n);
    const std::vector<double> base = candidates(raw.eps, options.threshold_margin);

    std::vector<double> fine, shifted;
    const bool gated = options.gate && !base.empty();
    if (gated) {
        if (op.grid.mapping == GridMapping::custom) {
            throw ConfigError("refinement gate needs a generated grid");
        }
        GridOptions wide = op.grid.options;
        wide.scale *= 2.0;
        const RadialGrid g2 = gauss_grid(2 * op.grid.size(), op.grid.mapping, op.grid.options);
        const RadialGrid gl = gauss_grid(op.grid.size(), op.grid.mapping, wide);
        fine = candidates(solve_pencil(assemble_t1(op.ell, op.params, g2), false).eps, options.threshold_margin);
        shifted = candidates(solve_pencil(assemble_t1(op.ell, op.params, gl), false).eps, options.threshold_margin);
    }

    std::vector<Eigenpair> out;
    out.reserve(static_cast<std::size_t>(c));
    for (Eigen::Index i = 0; i < c; ++i) {
        const double e = raw.eps[i];
        const bool below = static_cast<std::size_t>(i) < base.size();
        double drift = kNaN;
        bool converged = false;
        if (below && gated) {
            const auto k = static_cast<std::size_t>(i);
            if (k < fine.size() && k < shifted.size()) {
                drift = std::max(std::abs(e - fine[k]) / fine[k], std::abs(e - shifted[k]) / shifted[k]);
                converged = drift < options.gate_tol;
            } else {
                drift = std::numeric_limits<double>::infinity();
            }
        } else if (below) {
            converged = true;
        }
        out.push_back(Eigenpair{e, raw.vecs.col(i), below, converged, drift});
    }
    return out;
}

bool SpectralWindow::contains(double energy) const {
    if (discrete_empty) return false;
    return energy >= lower && energy < upper;
}

SpectralWindow spectral_window(double m, double alpha) {
    if (!(m > m_star())) throw DomainError("spectral_window: need m > m*");
    if (!std::isfinite(alpha)) throw DomainError("spectral_window: alpha must be finite");
    if (alpha >= 0.0) return SpectralWindow{m, alpha, true, 0.0, kNaN, kNaN};
    const double edge = -alpha * alpha / (4.0 * std::pow(kPi, 4));
    const double lam = efimov_lambda(m);
    return SpectralWindow{m, alpha, false, edge, edge / (1.0 - lam * lam), edge};
}

BoundStates bound_states(double m, double alpha, int ell, const SolverOptions& options) {
    if (!(m > m_star())) throw DomainError("bound_states: need m > m*");
    BoundStates result;
    if (!(alpha < 0.0)) {
        result.annotation = "alpha >= 0: the discrete spectrum is empty";
        return result;
    }
    const MassParams p = mass_params(m);
    const RadialGrid grid = solver_grid(options);
    const DiscretizedOperator op = assemble_t1(ell, p, grid);
    const SpectralWindow window = spectral_window(m, alpha);
    const auto spectrum = sector_spectrum(op, static_cast<int>(grid.size()), options);
    result.epsilon_min = spectrum.front().epsilon;
    result.epsilon_min_converged = spectrum.front().converged;
    for (const Eigenpair& e : spectrum) {
        if (!e.below_threshold) break;
        if (!e.converged) continue;
        const double lambda = alpha * alpha / (e.epsilon * e.epsilon);
        const double sl = std::sqrt(lambda);
        const Eigen::VectorXd mv = op.matrix * e.vector - e.epsilon * e.vector;

        // Physical charge: the T_1 profile dilated by sqrt(lambda).
        ChargeProfile charge{ell, grid, std::vector<double>(grid.size())};
        charge.grid.mapping = GridMapping::custom;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            charge.values[i] = e.vector[static_cast<Eigen::Index>(i)] / (std::sqrt(grid.weights[i]) * grid.nodes[i]);
            charge.grid.nodes[i] *= sl;
            charge.grid.weights[i] *= sl;
        }
        const double w = w_form(lambda, ell, p, charge, charge);
        if (!(w > 0.0)) throw NumericalError("bound_states: W-form of an eigenvector is not positive");
        const double s = 1.0 / std::sqrt(w);
        for (double& v : charge.values) v *= s;
        const double energy = -lambda;
        result.states.push_back(BoundState{energy, e.epsilon, std::move(charge),
                                           mv.norm() / e.epsilon, window.contains(energy)});
    }
    if (result.states.empty()) result.annotation = "no converged eigenvalue below 2 pi^2";
    return result;
}

double variational_quotient(double m, const TrialFunction& trial, std::size_t n) {
    if (!(trial.a > 1.0) || !(trial.b > 0.0)) throw DomainError("trial needs a > 1 and b > 0");
    const MassParams p = mass_params(m);
    SolverOptions o;
    o.n = n;
    const RadialGrid grid = solver_grid(o);
    const ChargeProfile f = sample_profile(1, grid, [&](double r) {
        return std::exp(-trial.b * r * r) / (r * std::log(r + trial.a));
    });
    return t_expectation(1.0, p, f) / l2_norm_sq(f);
}

double existence_threshold(const TrialFunction& trial, double tol) {
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    return bracketed_root([&](double m) { return variational_quotient(m, trial) - kTwoPi2; },
                          m_star() * (1.0 + 1e-6), 1.0, tol, "existence_threshold");
}

SweepResult monotonicity_sweep(const std::vector<double>& masses, int ell, const SolverOptions& options,
                               double tolerance) {
    if (masses.empty()) throw InputError("monotonicity_sweep: empty mass grid");
    for (std::size_t i = 1; i < masses.size(); ++i) {
        if (!(masses[i] > masses[i - 1])) throw InputError("monotonicity_sweep: masses must increase");
    }
    SweepResult out;
    const RadialGrid grid = solver_grid(options);
    for (double m : masses) {
        if (!(m > m_star())) throw DomainError("monotonicity_sweep: masses must exceed m*");
        const auto spec = sector_spectrum(assemble_t1(ell, mass_params(m), grid), 1, options);
        out.rows.push_back(SweepRow{m, spec.front().epsilon, spec.front().converged});
    }
    for (std::size_t i = 0; i + 1 < out.rows.size(); ++i) {
        if (out.rows[i + 1].epsilon_min < out.rows[i].epsilon_min - tolerance * out.rows[i].epsilon_min) {
            out.violations.push_back(i);
        }
    }
    return out;
}

std::pair<ChargeProfile, ChargeProfile> witness_pair(double r0, int n, int k, std::size_t nodes) {
    const GaussRule g = gauss_legendre(nodes);
    RadialGrid grid;
    grid.mapping = GridMapping::custom;
    struct Seg {
        int idx;
        double a, b;
    };
    std::vector<Seg> segs{{n, r0 + 1.0 / n, r0 + 2.0 / n}, {k, r0 + 1.0 / k, r0 + 2.0 / k}};
    std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
    if (segs[0].b > segs[1].a) throw DomainError("witness supports overlap");
    std::vector<int> owner;
    for (const Seg& s : segs) {
        for (std::size_t i = 0; i < nodes; ++i) {
            grid.nodes.push_back(0.5 * (s.a + s.b) + 0.5 * (s.b - s.a) * g.x[i]);
            grid.weights.push_back(0.5 * (s.b - s.a) * g.w[i]);
            owner.push_back(s.idx);
        }
    }
    ChargeProfile fn{1, grid, std::vector<double>(grid.size(), 0.0)};
    ChargeProfile fk{1, grid, std::vector<double>(grid.size(), 0.0)};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.nodes[i];
        if (owner[i] == n) fn.values[i] = std::sqrt(static_cast<double>(n)) / r;
        else fk.values[i] = std::sqrt(static_cast<double>(k)) / r;
    }
    return {fn, fk};
}

WitnessResult witness_sequence(double m, double alpha, double lambda, const std::vector<int>& indices) {
    if (!(alpha < 0.0)) throw DomainError("witness_sequence: alpha must be negative");
    const double top = alpha * alpha / (4.0 * std::pow(kPi, 4));
    if (!(lambda > 0.0 && lambda <= top)) throw DomainError("witness_sequence: lambda outside (0, alpha^2/(4 pi^4)]");
    if (indices.empty()) throw InputError("witness_sequence: no indices");
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 1) throw DomainError("witness_sequence: indices must be positive");
        if (i > 0 && indices[i] < 2 * indices[i - 1]) {
            throw DomainError("witness_sequence: supports of consecutive indices overlap (need n_{i+1} >= 2 n_i)");
        }
    }
    const MassParams p = mass_params(m);
    const double r0 = std::sqrt((top - lambda) / p.nu);
    const double a_abs = std::abs(alpha);
    WitnessResult out{m, alpha, lambda, r0, 1.0 / std::sqrt(r0 * r0 + 1.0), {}, {}};

    for (int n : indices) {
        const double a = r0 + 1.0 / n, b = r0 + 2.0 / n;
        const double sn = std::sqrt(static_cast<double>(n));
        // (2 pi / mu)(sqrt(n)/r) int_{I_n} phi_1(z(r, r')) dr'
        auto h = [&](double r) {
            auto inner = [&](double rp) { return phi_ell(1, (r * r + rp * rp + lambda) / (p.mu * r * rp)).value; };
            return 2.0 * kPi / p.mu * sn / r * integrate_finite(inner, a, b, 1e-12).value;
        };
        auto integrand = [&](double r, bool inside) {
            if (r <= 0.0) return 0.0;
            const double d = inside ? (kTwoPi2 * std::sqrt(p.nu * r * r + lambda) - a_abs) * sn / r : 0.0;
            const double g = d + h(r);
            return r * r * std::sqrt(r * r + 1.0) * g * g;
        };
        double res2 = integrate_finite([&](double r) { return integrand(r, true); }, a, b, 1e-11).value;
        res2 += integrate_finite([&](double r) { return integrand(r, false); }, 0.0, a, 1e-11).value;
        res2 += integrate_semi_infinite([&](double t) { return integrand(b + t, false); }, 1e-11, 1.0 / n).value;
        const double hm = n * (std::asinh(b) - std::asinh(a));
        out.rows.push_back(WitnessRow{n, std::sqrt(res2), hm});
    }
    for (std::size_t i = 0; i + 1 < indices.size(); ++i) {
        const auto [fn, fk] = witness_pair(r0, indices[i], indices[i + 1]);
        out.gram.push_back(GramEntry{indices[i], indices[i + 1], w_form(lambda, 1, p, fn, fk)});
    }
    return out;
}

} // namespace trimer
