#include "trimer/special_functions.hpp"

#include <cmath>

#include "trimer/errors.hpp"
#include "trimer/quadrature.hpp"

namespace trimer {

namespace {

constexpr double kInnerTol = 1e-13;

void require_z(double z) {
    if (!(z > 1.0) || std::isnan(z)) throw DomainError("legendre resolvent: need z > 1");
}

void require_power(int power) {
    if (power != 1 && power != 2) throw DomainError("legendre resolvent: power must be 1 or 2");
}

double closed_form(int ell, double z, int power) {
    const double L = std::log1p(2.0 / (z - 1.0));
    if (ell == 0) return power == 1 ? L : 2.0 / ((z - 1.0) * (z + 1.0));
    return power == 1 ? 2.0 - z * L : L - 2.0 * z / ((z - 1.0) * (z + 1.0));
}

// Rodrigues plus ell integrations by parts:
// int P_l/(y+z)^p = (-1)^l 2^-l binom(p+l-1, l) int (1-y^2)^l/(y+z)^(p+l).
// The integrand has one sign, so nothing cancels.
double by_quadrature(int ell, double z, int power) {
    auto h = [=](double y) {
        const double s = z / (y + z);
        return std::pow((1.0 - y * y) * s, ell) * std::pow(s, power);
    };
    const double I = integrate_finite(h, -1.0, 1.0, kInnerTol).value;
    const double sign = ell % 2 == 0 ? 1.0 : -1.0;
    const double binom = power == 1 ? 1.0 : static_cast<double>(ell + 1);
    return sign * std::ldexp(binom * I, -ell) / std::pow(z, ell + power);
}

// Expansion of 1/(y+z)^p in powers of y/z integrated against P_ell.
double by_series(int ell, double z, int power, int terms) {
    const double iz2 = 1.0 / (z * z);
    double zk = std::pow(z, -(ell + power));
    double m = legendre_moment(ell, ell);
    double sum = 0.0;
    for (int j = 0; j < terms; ++j) {
        const int k = ell + 2 * j;
        const double c = power == 1 ? 1.0 : static_cast<double>(k + 1);
        sum += c * m * zk;
        zk *= iz2;
        const double h = 0.5 * (k + ell);
        m *= (k + 2.0) * (k + 1.0) * (h + 1.0) / ((0.5 * (k - ell) + 1.0) * (k + ell + 3.0) * (k + ell + 2.0));
    }
    return ell % 2 == 0 ? sum : -sum;
}

PhiMethod choose(int ell, double z, const PhiConfig& config) {
    if (z > config.z_switch) return PhiMethod::asymptotic;
    return ell <= 1 ? PhiMethod::closed_form : PhiMethod::quadrature;
}

} // namespace

double legendre_p(int ell, double y) {
    if (ell < 0) throw DomainError("legendre_p: ell must be non-negative");
    if (!(std::abs(y) <= 1.0)) throw DomainError("legendre_p: |y| must not exceed 1");
    if (ell == 0) return 1.0;
    double p0 = 1.0, p1 = y;
    for (int k = 1; k < ell; ++k) {
        const double p2 = ((2.0 * k + 1.0) * y * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

std::string to_string(PhiMethod m) {
    switch (m) {
    case PhiMethod::closed_form: return "closed-form";
    case PhiMethod::quadrature: return "quadrature";
    case PhiMethod::asymptotic: return "asymptotic";
    }
    return "unknown";
}

double legendre_moment(int ell, int k) {
    if (ell < 0 || k < 0) throw DomainError("legendre_moment: negative index");
    if (k < ell || (k - ell) % 2 != 0) return 0.0;
    // int y^ell P_ell = 2^(ell+1) (ell!)^2 / (2 ell + 1)!
    double m = std::ldexp(1.0, ell + 1);
    for (int j = 1; j <= ell; ++j) m *= static_cast<double>(j) / static_cast<double>(ell + j);
    m /= static_cast<double>(2 * ell + 1);
    for (int q = ell; q < k; q += 2) {
        const double h = 0.5 * (q + ell);
        m *= (q + 2.0) * (q + 1.0) * (h + 1.0) / ((0.5 * (q - ell) + 1.0) * (q + ell + 3.0) * (q + ell + 2.0));
    }
    return m;
}

double legendre_resolvent(int ell, double z, int power, PhiMethod method) {
    if (ell < 0) throw DomainError("legendre resolvent: ell must be non-negative");
    require_z(z);
    require_power(power);
    switch (method) {
    case PhiMethod::closed_form:
        if (ell > 1) throw ConfigError("closed form only available for ell <= 1");
        return closed_form(ell, z, power);
    case PhiMethod::quadrature: return by_quadrature(ell, z, power);
    case PhiMethod::asymptotic: return by_series(ell, z, power, PhiConfig{}.series_terms);
    }
    return 0.0;
}

double legendre_resolvent(int ell, double z, int power, const PhiConfig& config) {
    if (ell < 0) throw DomainError("legendre resolvent: ell must be non-negative");
    require_z(z);
    require_power(power);
    const PhiMethod method = choose(ell, z, config);
    if (method == PhiMethod::asymptotic) return by_series(ell, z, power, config.series_terms);
    if (method == PhiMethod::closed_form) return closed_form(ell, z, power);
    return by_quadrature(ell, z, power);
}

PhiEval phi_ell(int ell, double z, const PhiConfig& config) {
    require_z(z);
    if (ell < 1 || ell % 2 == 0) throw UnsupportedSectorError("phi_ell: ell must be odd and positive");
    return PhiEval{ell, z, legendre_resolvent(ell, z, 1, config), choose(ell, z, config)};
}

double weight_integral(int ell) {
    if (ell < 0) throw DomainError("weight_integral: ell must be non-negative");
    return integrate_finite([ell](double y) { return std::pow(1.0 - y * y, ell); }, -1.0, 1.0, kInnerTol)
        .value;
}

double c_ell(int ell, double m_star) {
    if (ell < 1 || ell % 2 == 0) throw UnsupportedSectorError("c_ell: ell must be odd and positive");
    if (!(m_star > 0.0)) throw DomainError("c_ell: m_star must be positive");
    const double z = 1.0 + m_star;
    const double num =
        integrate_finite([=](double y) { return -legendre_p(ell, y) / (y + z); }, -1.0, 1.0, kInnerTol).value;
    return std::ldexp(std::pow(z, ell + 1) * num / weight_integral(ell), ell);
}

double theta(double lambda, double r, const MassParams& params) {
    if (!(lambda > 0.0)) throw DomainError("theta: lambda must be positive");
    if (!(r >= 0.0)) throw DomainError("theta: r must be non-negative");
    const double a = params.nu * r * r;
    return std::sqrt(a / (std::sqrt(a + lambda) + std::sqrt(lambda)));
}

} // namespace trimer
