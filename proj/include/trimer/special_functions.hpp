#pragma once

#include <string>

#include "trimer/mass_params.hpp"

namespace trimer {

/// Legendre polynomial P_ell(y) by the Bonnet recurrence.
double legendre_p(int ell, double y);

enum class PhiMethod { closed_form, quadrature, asymptotic };

std::string to_string(PhiMethod m);

/// Branch selection for the y-integrals int P_ell(y)/(y+z)^p dy.
struct PhiConfig {
    double z_switch = 20.0;  ///< series used for z > z_switch
    int series_terms = 24;
};

struct PhiEval {
    int ell;
    double z;
    double value;
    PhiMethod method;
};

/// phi_ell(z) = int_{-1}^{1} P_ell(y)/(y+z) dy for odd ell and z > 1.
PhiEval phi_ell(int ell, double z, const PhiConfig& config = {});

/// int_{-1}^{1} P_ell(y)/(y+z)^power dy for any ell >= 0, z > 1, power in {1, 2}.
double legendre_resolvent(int ell, double z, int power, const PhiConfig& config = {});

/// Same integral by the branch given explicitly; used to cross-check branches.
double legendre_resolvent(int ell, double z, int power, PhiMethod method);

/// int_{-1}^{1} y^k P_ell(y) dy.
double legendre_moment(int ell, int k);

/// int_{-1}^{1} (1-y^2)^ell dy by quadrature.
double weight_integral(int ell);

/// Correction constant C_ell fixed by tangency of the z^{-ell-1} envelope at 1+m_star.
double c_ell(int ell, double m_star);

/// theta_lambda(r) = sqrt(sqrt(nu r^2 + lambda) - sqrt(lambda)).
double theta(double lambda, double r, const MassParams& params);

} // namespace trimer
