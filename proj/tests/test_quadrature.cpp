#include <cmath>
#include <numbers>

#include <doctest.h>

#include "trimer/errors.hpp"
#include "trimer/quadrature.hpp"

using namespace trimer;

namespace {

double exp_sum(const RadialGrid& g) {
    return grid_sum(g, [](double r) { return std::exp(-r); });
}

} // namespace

TEST_CASE("gauss_legendre is exact for polynomials of degree 2n-1") {
    for (std::size_t n : {2u, 5u, 10u, 33u, 64u}) {
        const GaussRule g = gauss_legendre(n);
        double odd = 0.0, even = 0.0;
        const int d = static_cast<int>(2 * n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            odd += g.w[i] * std::pow(g.x[i], d);
            even += g.w[i] * std::pow(g.x[i], d - 1);
        }
        CHECK(std::abs(odd) < 1e-13);
        CHECK(even == doctest::Approx(2.0 / d).epsilon(1e-13));
    }
}

TEST_CASE("integrate_finite reference integrals") {
    const QuadResult a = integrate_finite([](double y) { return y * y; }, -1.0, 1.0, 1e-12);
    CHECK(std::abs(a.value - 2.0 / 3.0) < 1e-12);

    const QuadResult b = integrate_finite([](double y) { return y / (y + 2.0); }, -1.0, 1.0, 1e-12);
    CHECK(std::abs(b.value - (2.0 - 2.0 * std::log(3.0))) < 1e-12);

    const QuadResult c = integrate_finite([](double r) { return 1.0 / std::sqrt(r); }, 0.0, 1.0, 1e-10);
    CHECK(std::abs(c.value - 2.0) < 1e-10);
    CHECK(c.evaluations > 0);
}

TEST_CASE("adaptive error estimates are conservative on the reference battery") {
    struct Case {
        double value, exact, err;
    };
    std::vector<Case> cases;
    auto add = [&](QuadResult q, double exact) { cases.push_back({q.value, exact, q.error_estimate}); };
    add(integrate_finite([](double y) { return y * y; }, -1.0, 1.0, 1e-12), 2.0 / 3.0);
    add(integrate_finite([](double y) { return y / (y + 2.0); }, -1.0, 1.0, 1e-12), 2.0 - 2.0 * std::log(3.0));
    add(integrate_finite([](double r) { return 1.0 / std::sqrt(r); }, 0.0, 1.0, 1e-10), 2.0);
    add(integrate_semi_infinite([](double r) { return std::exp(-r * r); }, 1e-10), std::sqrt(std::numbers::pi) / 2);
    add(integrate_semi_infinite([](double r) { return r / ((r * r + 1) * (r * r + 1)); }, 1e-10), 0.5);
    add(integrate_semi_infinite([](double r) { return r * r * r / std::pow(1 + r * r, 3); }, 1e-10), 0.25);
    for (const Case& c : cases) {
        CHECK(c.err >= 0.0);
        CHECK(std::abs(c.value - c.exact) <= c.err);
    }
}

TEST_CASE("integrate_semi_infinite reference integrals") {
    CHECK(std::abs(integrate_semi_infinite([](double r) { return std::exp(-r * r); }, 1e-10).value -
                   std::sqrt(std::numbers::pi) / 2) < 1e-10);
    CHECK(std::abs(integrate_semi_infinite([](double r) { return r / ((r * r + 1) * (r * r + 1)); }, 1e-10).value -
                   0.5) < 1e-10);
    // B(2, 1)/2 = 1/4
    CHECK(std::abs(integrate_semi_infinite([](double r) { return r * r * r / std::pow(1 + r * r, 3); }, 1e-10).value -
                   0.25) < 1e-10);
}

TEST_CASE("budget exhaustion reports the best estimate") {
    try {
        integrate_finite([](double x) { return std::sin(1e5 * x); }, 0.0, 1.0, 1e-14, 200);
        FAIL("expected AccuracyError");
    } catch (const AccuracyError& e) {
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.error_estimate() > 0.0);
    }
}

TEST_CASE("integrate_finite rejects bad intervals") {
    CHECK_THROWS_AS(integrate_finite([](double) { return 1.0; }, 1.0, 0.0, 1e-10), DomainError);
    CHECK_THROWS_AS(integrate_finite([](double) { return 1.0; }, 0.0, 1.0, 0.0), DomainError);
}

TEST_CASE("gauss_grid rational map") {
    const RadialGrid g = gauss_grid(200);
    CHECK(g.size() == 200);
    CHECK(g.mapping == GridMapping::rational);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(g.weights[i] > 0.0);
        CHECK(std::isfinite(g.nodes[i]));
        if (i) CHECK(g.nodes[i] > g.nodes[i - 1]);
    }
    CHECK(g.nodes.front() > 0.0);
    CHECK(std::abs(exp_sum(g) - 1.0) < 1e-8);
    CHECK(std::abs(exp_sum(gauss_grid(400)) - exp_sum(g)) < 1e-10);

    GridOptions o;
    o.scale = 3.0;
    CHECK(std::abs(exp_sum(gauss_grid(200, GridMapping::rational, o)) - 1.0) < 1e-8);
}

TEST_CASE("gauss_grid log map") {
    const RadialGrid g = gauss_grid(400, "log");
    CHECK(g.size() == 400);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.nodes[i] > g.nodes[i - 1]);
    CHECK(std::abs(exp_sum(g) - 1.0) < 1e-8);
    CHECK(gauss_grid(203, GridMapping::log).size() == 203);
}

TEST_CASE("gauss_grid rejects bad requests") {
    CHECK_THROWS_AS(gauss_grid(100, "tanh-sinh"), ConfigError);
    CHECK_THROWS_AS(gauss_grid(100, GridMapping::custom), ConfigError);
    CHECK_THROWS_AS(gauss_grid(1), DomainError);
    CHECK(parse_mapping("rational") == GridMapping::rational);
    CHECK(to_string(GridMapping::log) == "log");
}
