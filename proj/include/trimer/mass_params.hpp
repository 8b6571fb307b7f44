#pragma once

namespace trimer {

inline constexpr double kRootTol = 1e-10;

/// Mass ratio m together with mu = 2/(m+1) and nu = m(m+2)/(m+1)^2.
struct MassParams {
    double m;
    double mu;
    double nu;
};

MassParams mass_params(double m);

/// Efimov transcendental function
/// (2/pi)(m+1)^2 (1/sqrt(m(m+2)) - arcsin(1/(m+1))).
double efimov_lambda(double m);

/// Root of efimov_lambda(m) = 1.
double critical_mass_star(double tol = kRootTol);

/// Root in m of pi sqrt(nu) + int_0^inf r^s phi_1((r^2+1)/(mu r))/(mu r) dr = 0.
double mass_of_s(double s, double tol = kRootTol);

/// mass_of_s(1, tol).
double critical_mass_double_star(double tol = kRootTol);

} // namespace trimer
