#pragma once

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trimer/charge_operator.hpp"
#include "trimer/mass_params.hpp"
#include "trimer/quadrature.hpp"

namespace trimer {

/// Grid and acceptance settings of the Nystrom eigenproblem.
struct SolverOptions {
    std::size_t n = 400;
    GridMapping mapping = GridMapping::log;
    GridOptions grid{};
    double gate_tol = 1e-4;          ///< max relative drift under 2N and 2L
    double threshold_margin = 1e-9;  ///< candidates need eps < 2 pi^2 (1 - margin)
    bool gate = true;
};

RadialGrid solver_grid(const SolverOptions& options);

/// Symmetrised Nystrom matrix of T_1 restricted to an odd sector.
struct DiscretizedOperator {
    int ell;
    MassParams params;
    RadialGrid grid;
    Eigen::MatrixXd matrix;
    Eigen::VectorXd diagonal;  ///< 2 pi^2 sqrt(nu r_i^2 + 1)
    double lambda_shift = 1.0;
};

DiscretizedOperator assemble_t1(int ell, const MassParams& params, const RadialGrid& grid);

struct Eigenpair {
    double epsilon;
    Eigen::VectorXd vector;  ///< eigenvector of the symmetric matrix, unit l2 norm
    bool below_threshold;
    bool converged;          ///< below threshold and stable under the refinement gate
    double drift;            ///< largest relative change under refinement (NaN if not gated)
};

/// The `count` smallest eigenvalues of the operator.
std::vector<Eigenpair> sector_spectrum(const DiscretizedOperator& op, int count,
                                       const SolverOptions& options = {});

/// Discrete window for E = -alpha^2/eps^2.
struct SpectralWindow {
    double m;
    double alpha;
    bool discrete_empty;     ///< alpha >= 0
    double essential_lower;  ///< bottom of the essential spectrum
    double lower;            ///< -alpha^2/(4 pi^4 (1 - Lambda^2)); NaN if empty
    double upper;            ///< -alpha^2/(4 pi^4); NaN if empty

    bool contains(double energy) const;
};

SpectralWindow spectral_window(double m, double alpha);

struct BoundState {
    double energy;
    double epsilon;
    ChargeProfile charge;  ///< physical sector-1 charge at lambda = -E, w_form(charge, charge) = 1
    double residual;       ///< |(M - eps) v| / (eps |v|)
    bool in_window;
};

struct BoundStates {
    std::vector<BoundState> states;
    double epsilon_min = std::numeric_limits<double>::quiet_NaN();  ///< lowest discrete eigenvalue, bound state or not
    bool epsilon_min_converged = false;
    std::string annotation;
};

BoundStates bound_states(double m, double alpha, int ell = 1, const SolverOptions& options = {});

struct TrialFunction {
    double a = 1.2;
    double b = 0.05;
};

/// Rayleigh quotient of T_1 on exp(-b r^2)/(r ln(r + a)).
double variational_quotient(double m, const TrialFunction& trial = {}, std::size_t n = 800);

/// Mass where variational_quotient crosses 2 pi^2.
double existence_threshold(const TrialFunction& trial = {}, double tol = kRootTol);

struct SweepRow {
    double m;
    double epsilon_min;
    bool bound_state;  ///< epsilon_min is a converged value below threshold
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::size_t> violations;  ///< i such that eps(i+1) < eps(i) - tolerance
};

SweepResult monotonicity_sweep(const std::vector<double>& masses, int ell = 1,
                               const SolverOptions& options = {}, double tolerance = 1e-9);

struct WitnessRow {
    int n;
    double residual_norm;      ///< H^{1/2} norm of (T_lambda + alpha) xi_n
    double h_minus_half_sq;    ///< |xi_n|^2 in H^{-1/2}
};

struct GramEntry {
    int n;
    int k;
    double value;  ///< w_form(f_n, f_k)
};

struct WitnessResult {
    double m;
    double alpha;
    double lambda;
    double r0;
    double h_minus_half_limit;  ///< (r0^2 + 1)^{-1/2}
    std::vector<WitnessRow> rows;
    std::vector<GramEntry> gram;
};

/// Singular sequence f_n = sqrt(n)/r on [r0 + 1/n, r0 + 2/n], sector 1.
WitnessResult witness_sequence(double m, double alpha, double lambda, const std::vector<int>& indices);

/// f_n and f_k sampled on a grid made of Gauss nodes on both supports.
std::pair<ChargeProfile, ChargeProfile> witness_pair(double r0, int n, int k, std::size_t nodes = 40);

} // namespace trimer
