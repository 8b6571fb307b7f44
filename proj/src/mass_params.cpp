#include "trimer/mass_params.hpp"

#include <cmath>
#include <numbers>

#include "trimer/errors.hpp"
#include "trimer/quadrature.hpp"
#include "trimer/roots.hpp"
#include "trimer/special_functions.hpp"

namespace trimer {

namespace {

void require_mass(double m) {
    if (!std::isfinite(m) || !(m > 0.0)) throw DomainError("mass ratio must be positive and finite");
}

} // namespace

MassParams mass_params(double m) {
    require_mass(m);
    const double mu = 2.0 / (m + 1.0);
    return MassParams{m, mu, m * (m + 2.0) / ((m + 1.0) * (m + 1.0))};
}

double efimov_lambda(double m) {
    require_mass(m);
    const double p = m + 1.0;
    return 2.0 / std::numbers::pi * p * p * (1.0 / std::sqrt(m * (m + 2.0)) - std::asin(1.0 / p));
}

double critical_mass_star(double tol) {
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    return bracketed_root([](double m) { return efimov_lambda(m) - 1.0; }, 1e-4, 1.0, tol,
                          "critical_mass_star");
}

double mass_of_s(double s, double tol) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("mass_of_s: s must lie in [0, 1]");
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    auto F = [s](double m) {
        const MassParams p = mass_params(m);
        auto g = [&](double r) {
            if (r == 0.0) return 0.0;
            const double z = (r * r + 1.0) / (p.mu * r);
            return std::pow(r, s) * phi_ell(1, z).value / (p.mu * r);
        };
        return std::numbers::pi * std::sqrt(p.nu) + integrate_semi_infinite(g, 1e-12).value;
    };
    return bracketed_root(F, 1e-4, 1.0, tol, "mass_of_s");
}

double critical_mass_double_star(double tol) { return mass_of_s(1.0, tol); }

} // namespace trimer
