#pragma once

#include <Eigen/Dense>

#include "trimer/mass_params.hpp"
#include "trimer/quadrature.hpp"

namespace trimer {

/// Schur-test bound C(m) on the norm of K_ell in sector 1 or 3.
struct Certificate {
    int ell;
    double m;
    double bound;
    bool certifies_absence;
    double mu;
    double nu;
    double r_max;       ///< closed-form maximiser of A
    double a_max;       ///< A(r_max)
    double multiplier;  ///< bound = multiplier * A(r_max)
    double r_max_scan;  ///< maximiser found by direct numerical search
    double a_max_scan;
};

/// Profile A(r) maximised in the certificate for sector ell.
double certificate_profile(int ell, const MassParams& params, double r);

Certificate certify_ell1(double m);
Certificate certify_ell3(double m);

/// Mass where the sector-1 certificate bound crosses 1. Only an upper bound on
/// the true absence threshold.
double absence_threshold(double tol = kRootTol);

/// sqrt(w_i) r_i K_ell(r_i, r_j) sqrt(w_j) r_j.
Eigen::MatrixXd kernel_matrix(int ell, const MassParams& params, const RadialGrid& grid);

struct SingularValues {
    double first;
    double second;
    int iterations;
};

/// Two largest singular values of a symmetric matrix by power iteration on its
/// Gram operator with one deflation step.
SingularValues top_singular_values(const Eigen::MatrixXd& a, double tol = 1e-12, int budget = 50000);

/// Largest singular value of kernel_matrix(ell, mass_params(m), grid).
double numeric_kernel_norm(int ell, double m, const RadialGrid& grid);

} // namespace trimer
