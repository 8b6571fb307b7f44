#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "trimer/errors.hpp"

namespace trimer {

/// Bracketed root of a scalar function on [a, b] (TOMS 748: secant and
/// inverse-cubic steps safeguarded by bisection). Returns the bracket midpoint
/// once the bracket is narrower than tol.
template <class F>
double bracketed_root(F&& f, double a, double b, double tol, const std::string& what) {
    const double fa = f(a);
    const double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb) || (fa > 0.0) == (fb > 0.0)) {
        throw InternalError(what + ": initial bracket does not straddle a root");
    }
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    std::uintmax_t max_iter = 200;
    auto stop = [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; };
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, stop, max_iter);
    if (!stop(lo, hi)) {
        throw AccuracyError(what + ": root iteration budget exhausted", 0.5 * (lo + hi), hi - lo);
    }
    return 0.5 * (lo + hi);
}

} // namespace trimer
