#pragma once

#include <cstddef>
#include <vector>

#include "trimer/mass_params.hpp"
#include "trimer/quadrature.hpp"
#include "trimer/special_functions.hpp"

namespace trimer {

/// Radial factor f(r) of a charge in angular sector ell, sampled on a grid.
struct ChargeProfile {
    int ell = 1;
    RadialGrid grid;
    std::vector<double> values;
};

template <class F>
ChargeProfile sample_profile(int ell, const RadialGrid& grid, F&& f) {
    ChargeProfile p{ell, grid, {}};
    p.values.reserve(grid.size());
    for (double r : grid.nodes) p.values.push_back(f(r));
    return p;
}

/// Squared norm in L^2(r^2 dr).
double l2_norm_sq(const ChargeProfile& f);

/// Off-diagonal density of the sector form,
/// k(r, r') = 2 pi int P_ell(y)/(r^2 + r'^2 + mu r r' y + lambda) dy.
struct SectorKernel {
    int ell;
    double lambda;
    MassParams params;
    PhiConfig config{};

    double operator()(double r, double r_prime) const;
};

/// int P_ell(y)/(r^2 + r'^2 + mu r r' y + lambda)^power dy through the z-reduction.
double sector_y_integral(int ell, double lambda, const MassParams& params, double r, double r_prime,
                         int power = 1, const PhiConfig& config = {});

/// Same integral by direct adaptive quadrature over y; a cross-check of the reduction.
double sector_y_integral_direct(int ell, double lambda, const MassParams& params, double r,
                                double r_prime, int power = 1);

/// 2 pi^2 int r^2 sqrt(nu r^2 + lambda) f^2 dr.
double phi_form(double lambda, const MassParams& params, const ChargeProfile& f);

/// 2 pi int int r^2 f(r) r'^2 f(r') [int P_ell(y)/(r^2+r'^2+mu r r' y+lambda) dy] dr dr'.
double psi_form(double lambda, int ell, const MassParams& params, const ChargeProfile& f);

/// psi_form with every y-integral done by direct quadrature (slow reference path).
double psi_form_direct(double lambda, int ell, const MassParams& params, const ChargeProfile& f);

/// phi_form + psi_form in the profile's own sector.
double t_expectation(double lambda, const MassParams& params, const ChargeProfile& f);

/// K_ell(r, r') = phi_ell(z)/(pi mu r r' theta_1(r) theta_1(r')), z = (r^2+r'^2+1)/(mu r r').
double kernel_k(int ell, const MassParams& params, double r, double r_prime);

/// 2 pi^2 |theta_1 f|^2 + <theta_1 f, 2 pi^2 K_ell theta_1 f>: the shifted form at lambda = 1
/// rebuilt from theta_1 and K_ell.
double shifted_form_via_kernel(const MassParams& params, const ChargeProfile& f);

/// Mellin multiplier lambda_ell(rho) of the homogeneous sector operator.
double mellin_symbol(int ell, double rho, const MassParams& params);

/// sigma_ell(k) = 1/2 int P_ell(y) sinh(k a)/(cos a sinh(k pi/2)) dy, a = arcsin(y/(m+1)).
double sigma_symbol(int ell, double k, const MassParams& params);

/// Sector reduction of <u_f, u_g>:
/// 2 pi^2 int r^2 f g/sqrt(nu r^2+lambda) - 4 pi int int r^2 f r'^2 g int P_ell/(...)^2 dy.
double w_form(double lambda, int ell, const MassParams& params, const ChargeProfile& f,
              const ChargeProfile& g);

} // namespace trimer
