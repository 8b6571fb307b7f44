#include "trimer/schur.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "trimer/charge_operator.hpp"
#include "trimer/errors.hpp"
#include "trimer/roots.hpp"
#include "trimer/special_functions.hpp"

namespace trimer {

namespace {

struct Constants {
    double m_star;
    double c1;
    double c3;
};

const Constants& constants() {
    static const Constants c = [] {
        const double ms = critical_mass_star(1e-13);
        return Constants{ms, c_ell(1, ms), c_ell(3, ms)};
    }();
    return c;
}

// Coarse log-spaced scan of A on (0, 50], then Brent refinement around the best node.
std::pair<double, double> scan_maximum(int ell, const MassParams& p) {
    constexpr int kPoints = 4000;
    const double lo = std::log(1e-3), hi = std::log(50.0);
    int best = 0;
    double best_a = -1.0;
    for (int i = 0; i <= kPoints; ++i) {
        const double r = std::exp(lo + (hi - lo) * i / kPoints);
        const double a = certificate_profile(ell, p, r);
        if (a > best_a) {
            best_a = a;
            best = i;
        }
    }
    const double left = std::exp(lo + (hi - lo) * std::max(best - 1, 0) / kPoints);
    const double right = std::exp(lo + (hi - lo) * std::min(best + 1, kPoints) / kPoints);
    const auto [r, neg] = boost::math::tools::brent_find_minima(
        [&](double x) { return -certificate_profile(ell, p, x); }, left, right, 52);
    return {r, -neg};
}

Certificate build(int ell, double m, double r_max, double multiplier) {
    const MassParams p = mass_params(m);
    const double a = certificate_profile(ell, p, r_max);
    const auto [rs, as] = scan_maximum(ell, p);
    const double bound = multiplier * a;
    return Certificate{ell, m, bound, bound < 1.0, p.mu, p.nu, r_max, a, multiplier, rs, as};
}

} // namespace

double certificate_profile(int ell, const MassParams& params, double r) {
    const double t = theta(1.0, r, params);
    const double s = 1.0 + r * r;
    if (ell == 1) return r * r * r / (t * t * s);
    if (ell == 3) return r * r * r * r / (t * t * s * std::sqrt(s));
    throw UnsupportedSectorError("certificate only available for ell = 1 or 3");
}

Certificate certify_ell1(double m) {
    const Constants& c = constants();
    if (!(m > c.m_star)) throw DomainError("certify_ell1: need m > m*");
    const MassParams p = mass_params(m);
    const double nu = p.nu;
    const double r_max = std::sqrt(-1.0 + 2.0 * nu + 2.0 * std::sqrt(1.0 - nu + nu * nu));
    return build(1, m, r_max, p.mu * c.c1 / (3.0 * std::numbers::pi));
}

Certificate certify_ell3(double m) {
    const Constants& c = constants();
    // The value at m* itself is part of the statement, so allow rounding at the edge.
    if (!(m >= c.m_star * (1.0 - 1e-12))) throw DomainError("certify_ell3: need m >= m*");
    const MassParams p = mass_params(m);
    const double nu = p.nu;
    const double r_max = std::sqrt(1.5 * std::sqrt(9.0 * nu * nu - 4.0 * nu + 4.0) + 4.5 * nu - 1.0);
    return build(3, m, r_max, c.c3 / 280.0 * p.mu * p.mu * p.mu);
}

double absence_threshold(double tol) {
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    const double lo = constants().m_star * (1.0 + 1e-9);
    return bracketed_root([](double m) { return certify_ell1(m).bound - 1.0; }, lo, 1.0, tol,
                          "absence_threshold");
}

Eigen::MatrixXd kernel_matrix(int ell, const MassParams& params, const RadialGrid& grid) {
    const std::size_t n = grid.size();
    Eigen::VectorXd s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = std::sqrt(grid.weights[i]) * grid.nodes[i];
    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = s[i] * s[j] * kernel_k(ell, params, grid.nodes[i], grid.nodes[j]);
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    return a;
}

SingularValues top_singular_values(const Eigen::MatrixXd& a, double tol, int budget) {
    const Eigen::Index n = a.rows();
    if (n == 0 || a.cols() != n) throw ShapeError("top_singular_values: need a square matrix");
    const Eigen::MatrixXd g = a.transpose() * a;
    int total = 0;

    auto power = [&](const Eigen::MatrixXd& op, Eigen::VectorXd v) {
        v.normalize();
        double prev = 0.0;
        for (int it = 0; it < budget; ++it) {
            ++total;
            Eigen::VectorXd w = op * v;
            const double rq = v.dot(w);
            const double norm = w.norm();
            if (norm == 0.0) return std::pair{0.0, v};
            v = w / norm;
            if (it > 0 && std::abs(rq - prev) <= tol * std::abs(rq)) return std::pair{rq, v};
            prev = rq;
        }
        throw AccuracyError("power iteration did not converge", std::sqrt(std::max(prev, 0.0)), 0.0);
    };

    Eigen::VectorXd start = Eigen::VectorXd::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) start[i] += 1e-3 * std::sin(1.0 + static_cast<double>(i));
    const auto [l1, v1] = power(g, start);
    Eigen::VectorXd start2 = start - v1 * v1.dot(start);
    const Eigen::MatrixXd g2 = g - l1 * v1 * v1.transpose();
    const auto [l2, v2] = power(g2, start2);
    (void)v2;
    return SingularValues{std::sqrt(std::max(l1, 0.0)), std::sqrt(std::max(l2, 0.0)), total};
}

double numeric_kernel_norm(int ell, double m, const RadialGrid& grid) {
    if (ell < 1 || ell % 2 == 0) throw UnsupportedSectorError("numeric_kernel_norm: ell must be odd");
    return top_singular_values(kernel_matrix(ell, mass_params(m), grid)).first;
}

} // namespace trimer
