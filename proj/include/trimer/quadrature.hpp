#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <tuple>
#include <utility>
#include <string>
#include <string_view>
#include <vector>

#include "trimer/errors.hpp"

namespace trimer {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

inline constexpr std::size_t kDefaultEvalBudget = 1'000'000;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

GaussRule gauss_legendre(std::size_t n);

/// `custom` marks grids assembled by hand; it cannot be requested by tag.
enum class GridMapping { rational, log, custom };

GridMapping parse_mapping(std::string_view tag);
std::string to_string(GridMapping m);

struct GridOptions {
    double scale = 1.0;          // L in r = L u/(1-u) and r = L e^x
    double log_min = -20.0;      // x range of the log mapping
    double log_max = 24.0;
    std::size_t panel_order = 8; // nodes per panel of the log mapping
};

/// Quadrature rule on (0, inf).
struct RadialGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    GridMapping mapping = GridMapping::rational;
    GridOptions options;

    std::size_t size() const noexcept { return nodes.size(); }
};

RadialGrid gauss_grid(std::size_t n, GridMapping mapping = GridMapping::rational,
                      const GridOptions& options = {});
RadialGrid gauss_grid(std::size_t n, std::string_view mapping, const GridOptions& options = {});

/// Sum w_i g(r_i) over a grid.
template <class F>
double grid_sum(const RadialGrid& grid, F&& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) s += grid.weights[i] * g(grid.nodes[i]);
    return s;
}

namespace detail {

// 10-point Gauss-Legendre on [-1, 1].
inline constexpr double kGL10x[5] = {0.1488743389816312108848260, 0.4333953941292471907992659,
                                     0.6794095682990244062343274, 0.8650633666889845107320967,
                                     0.9739065285171717200779640};
inline constexpr double kGL10w[5] = {0.2955242247147528701738930, 0.2692667193099963550912269,
                                     0.2190863625159820439955349, 0.1494513491505805931457763,
                                     0.0666713443086881375935688};

template <class G>
double gl10(G& g, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (int k = 0; k < 5; ++k) {
        const double d = h * kGL10x[k];
        s += kGL10w[k] * (g(c - d) + g(c + d));
    }
    return s * h;
}

// Globally adaptive bisection on [t0, t1]; each panel compares the 10-point rule
// with the sum over its two halves.
template <class G>
QuadResult adaptive(G&& g, double t0, double t1, double tol, std::size_t budget) {
    struct Panel {
        double a, b, left, right, err;
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    std::size_t evals = 0;
    auto make = [&](double a, double b, double whole) {
        const double m = 0.5 * (a + b);
        const double l = gl10(g, a, m);
        const double r = gl10(g, m, b);
        evals += 20;
        return Panel{a, b, l, r, std::abs(whole - (l + r))};
    };

    std::vector<Panel> heap;
    constexpr int kInitial = 4;
    for (int i = 0; i < kInitial; ++i) {
        const double a = t0 + (t1 - t0) * i / kInitial;
        const double b = t0 + (t1 - t0) * (i + 1) / kInitial;
        const double whole = gl10(g, a, b);
        evals += 10;
        heap.push_back(make(a, b, whole));
        std::push_heap(heap.begin(), heap.end());
    }

    auto totals = [&heap]() {
        double v = 0.0, e = 0.0;
        for (const auto& p : heap) {
            v += p.left + p.right;
            e += p.err;
        }
        return std::pair{v, e};
    };

    auto [value, err] = totals();
    std::size_t since_resum = 0;
    while (err > tol * std::max(1.0, std::abs(value))) {
        if (evals + 40 > budget) {
            throw AccuracyError("adaptive quadrature exceeded its evaluation budget", value, err);
        }
        std::pop_heap(heap.begin(), heap.end());
        const Panel p = heap.back();
        heap.pop_back();
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) {
            throw AccuracyError("adaptive quadrature reached machine resolution", value, err);
        }
        const Panel l = make(p.a, m, p.left);
        const Panel r = make(m, p.b, p.right);
        value += (l.left + l.right + r.left + r.right) - (p.left + p.right);
        err += (l.err + r.err) - p.err;
        heap.push_back(l);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(r);
        std::push_heap(heap.begin(), heap.end());
        if (++since_resum == 64) {
            std::tie(value, err) = totals();
            since_resum = 0;
        }
    }
    std::tie(value, err) = totals();
    // Add a rounding floor for the summation itself.
    double mag = 0.0;
    for (const auto& p : heap) mag += std::abs(p.left) + std::abs(p.right);
    err += 4.0 * std::numeric_limits<double>::epsilon() * mag;
    return QuadResult{value, err, evals};
}

} // namespace detail

/// Adaptive integral of f over [a, b].
///
/// The interval is first reparametrised by x = a + (b-a)(3t^2 - 2t^3), which
/// removes integrable inverse-square-root endpoint singularities.
template <class F>
QuadResult integrate_finite(F&& f, double a, double b, double tol,
                            std::size_t budget = kDefaultEvalBudget) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate_finite: need finite a < b");
    }
    if (!(tol > 0.0)) throw DomainError("integrate_finite: tol must be positive");
    const double h = b - a;
    auto g = [&](double t) {
        const double s = 1.0 - t;
        const double x = t < 0.5 ? a + h * t * t * (3.0 - 2.0 * t) : b - h * s * s * (1.0 + 2.0 * t);
        return f(x) * h * 6.0 * t * s;
    };
    return detail::adaptive(g, 0.0, 1.0, tol, budget);
}

/// Adaptive integral of f over (0, inf) through r = L u/(1-u).
template <class F>
QuadResult integrate_semi_infinite(F&& f, double tol, double scale = 1.0,
                                   std::size_t budget = kDefaultEvalBudget) {
    if (!(tol > 0.0)) throw DomainError("integrate_semi_infinite: tol must be positive");
    if (!(scale > 0.0)) throw DomainError("integrate_semi_infinite: scale must be positive");
    auto g = [&](double t) {
        const double s = 1.0 - t;
        const double u = t * t * (3.0 - 2.0 * t);
        const double one_minus_u = s * s * (1.0 + 2.0 * t);
        const double r = scale * u / one_minus_u;
        const double jac = scale / (one_minus_u * one_minus_u) * 6.0 * t * s;
        const double v = f(r);
        return v == 0.0 ? 0.0 : v * jac;
    };
    return detail::adaptive(g, 0.0, 1.0, tol, budget);
}

} // namespace trimer
