#include "trimer/charge_operator.hpp"

#include <cmath>
#include <numbers>

#include "trimer/errors.hpp"

namespace trimer {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi2 = 2.0 * kPi * kPi;
constexpr double kSymbolTol = 1e-13;

void require_lambda(double lambda, bool strict) {
    if (std::isnan(lambda) || lambda < 0.0 || (strict && lambda == 0.0)) {
        throw DomainError(strict ? "lambda must be positive" : "lambda must be non-negative");
    }
}

void require_shape(const ChargeProfile& f) {
    if (f.values.size() != f.grid.size()) throw ShapeError("profile and grid sizes differ");
}

void require_same(const ChargeProfile& f, const ChargeProfile& g) {
    require_shape(f);
    require_shape(g);
    if (f.ell != g.ell) throw ShapeError("profiles belong to different sectors");
    if (f.grid.nodes != g.grid.nodes || f.grid.weights != g.grid.weights) {
        throw ShapeError("profiles live on different grids");
    }
}

// Double Nystrom sum sum_ij w_i w_j r_i^2 r_j^2 f_i g_j k(r_i, r_j) for a symmetric k.
template <class K>
double double_sum(const ChargeProfile& f, const ChargeProfile& g, K&& k) {
    const auto& r = f.grid.nodes;
    const auto& w = f.grid.weights;
    const std::size_t n = r.size();
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = w[i] * r[i] * r[i] * f.values[i];
        b[i] = w[i] * r[i] * r[i] * g.values[i];
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double c = a[i] * b[j] + (i == j ? 0.0 : a[j] * b[i]);
            if (c == 0.0) continue;
            s += c * k(r[i], r[j]);
        }
    }
    return s;
}

// sinh(k a)/sinh(k pi/2) for k >= 0 without overflow; 2a/pi at k = 0.
double sinh_ratio(double k, double a) {
    if (k == 0.0) return 2.0 * a / kPi;
    const double s = std::abs(a);
    const double v = std::exp(k * (s - 0.5 * kPi)) * std::expm1(-2.0 * k * s) / std::expm1(-k * kPi);
    return a < 0.0 ? -v : v;
}

// cosh(k a)/cosh(k pi/2) for k >= 0.
double cosh_ratio(double k, double a) {
    const double s = std::abs(a);
    return std::exp(k * (s - 0.5 * kPi)) * (1.0 + std::exp(-2.0 * k * s)) / (1.0 + std::exp(-k * kPi));
}

} // namespace

double l2_norm_sq(const ChargeProfile& f) {
    require_shape(f);
    double s = 0.0;
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const double r = f.grid.nodes[i];
        s += f.grid.weights[i] * r * r * f.values[i] * f.values[i];
    }
    return s;
}

double sector_y_integral(int ell, double lambda, const MassParams& params, double r, double r_prime,
                         int power, const PhiConfig& config) {
    if (!(r > 0.0) || !(r_prime > 0.0)) throw DomainError("radii must be positive");
    const double q = params.mu * r * r_prime;
    const double z = (r * r + r_prime * r_prime + lambda) / q;
    return legendre_resolvent(ell, z, power, config) / (power == 1 ? q : q * q);
}

double sector_y_integral_direct(int ell, double lambda, const MassParams& params, double r,
                                double r_prime, int power) {
    if (!(r > 0.0) || !(r_prime > 0.0)) throw DomainError("radii must be positive");
    const double base = r * r + r_prime * r_prime + lambda;
    const double q = params.mu * r * r_prime;
    // Scaled by base^power so the tolerance acts relatively.
    auto h = [&](double y) {
        const double d = base / (base + q * y);
        return legendre_p(ell, y) * (power == 1 ? d : d * d);
    };
    return integrate_finite(h, -1.0, 1.0, 1e-14).value / std::pow(base, power);
}

double SectorKernel::operator()(double r, double r_prime) const {
    return 2.0 * kPi * sector_y_integral(ell, lambda, params, r, r_prime, 1, config);
}

double phi_form(double lambda, const MassParams& params, const ChargeProfile& f) {
    require_lambda(lambda, false);
    require_shape(f);
    double s = 0.0;
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const double r = f.grid.nodes[i];
        s += f.grid.weights[i] * r * r * std::sqrt(params.nu * r * r + lambda) * f.values[i] * f.values[i];
    }
    return kTwoPi2 * s;
}

double psi_form(double lambda, int ell, const MassParams& params, const ChargeProfile& f) {
    require_lambda(lambda, false);
    require_shape(f);
    if (ell != f.ell) throw ShapeError("psi_form: sector does not match profile");
    const SectorKernel k{ell, lambda, params};
    return double_sum(f, f, k);
}

double psi_form_direct(double lambda, int ell, const MassParams& params, const ChargeProfile& f) {
    require_lambda(lambda, false);
    require_shape(f);
    if (ell != f.ell) throw ShapeError("psi_form_direct: sector does not match profile");
    return double_sum(f, f, [&](double r, double rp) {
        return 2.0 * kPi * sector_y_integral_direct(ell, lambda, params, r, rp, 1);
    });
}

double t_expectation(double lambda, const MassParams& params, const ChargeProfile& f) {
    return phi_form(lambda, params, f) + psi_form(lambda, f.ell, params, f);
}

double kernel_k(int ell, const MassParams& params, double r, double r_prime) {
    if (!(r > 0.0) || !(r_prime > 0.0)) throw DomainError("kernel_k: radii must be positive");
    const double q = params.mu * r * r_prime;
    const double z = (r * r + r_prime * r_prime + 1.0) / q;
    const double phi = phi_ell(ell, z).value;
    return phi / (kPi * q * theta(1.0, r, params) * theta(1.0, r_prime, params));
}

double shifted_form_via_kernel(const MassParams& params, const ChargeProfile& f) {
    require_shape(f);
    const auto& r = f.grid.nodes;
    const std::size_t n = r.size();
    std::vector<double> tf(n);
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        tf[i] = theta(1.0, r[i], params) * f.values[i];
        diag += f.grid.weights[i] * r[i] * r[i] * tf[i] * tf[i];
    }
    ChargeProfile g{f.ell, f.grid, tf};
    const double off = double_sum(g, g, [&](double a, double b) { return kernel_k(f.ell, params, a, b); });
    return kTwoPi2 * (diag + off);
}

double mellin_symbol(int ell, double rho, const MassParams& params) {
    if (ell < 0) throw DomainError("mellin_symbol: ell must be non-negative");
    if (std::isnan(rho)) throw DomainError("mellin_symbol: rho is NaN");
    const double k = std::abs(rho);
    const double p = params.m + 1.0;
    const bool odd = ell % 2 == 1;
    auto h = [&](double x) {
        const double a = std::asin(x / p);
        const double ratio = odd ? sinh_ratio(k, a) : cosh_ratio(k, a);
        return legendre_p(ell, x) * ratio / std::cos(a);
    };
    const double I = integrate_finite(h, 0.0, 1.0, kSymbolTol).value;
    return odd ? -kTwoPi2 * I : kTwoPi2 * I;
}

double sigma_symbol(int ell, double k, const MassParams& params) {
    if (ell < 1 || ell % 2 == 0) throw UnsupportedSectorError("sigma_symbol: ell must be odd");
    const double kk = std::abs(k);
    const double p = params.m + 1.0;
    auto h = [&](double y) {
        const double a = std::asin(y / p);
        return legendre_p(ell, y) * sinh_ratio(kk, a) / std::cos(a);
    };
    // The integrand is even in y for odd ell.
    return integrate_finite(h, 0.0, 1.0, kSymbolTol).value;
}

double w_form(double lambda, int ell, const MassParams& params, const ChargeProfile& f,
              const ChargeProfile& g) {
    require_lambda(lambda, true);
    require_same(f, g);
    if (ell != f.ell) throw ShapeError("w_form: sector does not match profiles");
    double diag = 0.0;
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const double r = f.grid.nodes[i];
        diag += f.grid.weights[i] * r * r * f.values[i] * g.values[i] / std::sqrt(params.nu * r * r + lambda);
    }
    const double off = double_sum(f, g, [&](double a, double b) {
        return sector_y_integral(ell, lambda, params, a, b, 2);
    });
    return kTwoPi2 * diag - 4.0 * kPi * off;
}

} // namespace trimer
