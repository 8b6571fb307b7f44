#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "trimer/errors.hpp"
#include "trimer/mass_params.hpp"
#include "trimer/spectral.hpp"

using namespace trimer;

TEST_CASE("mass_params values") {
    const MassParams p = mass_params(1.0);
    CHECK(p.m == 1.0);
    CHECK(p.mu == 1.0);
    CHECK(p.nu == 0.75);

    const MassParams big = mass_params(1e6);
    CHECK(std::abs(big.mu) < 1e-5);
    CHECK(std::abs(big.nu - 1.0) < 1e-5);

    const MassParams s = mass_params(critical_mass_star());
    CHECK(std::abs(s.mu - 1.86) <= 0.01);
    CHECK(std::abs(s.nu - 0.13) <= 0.005);
}

TEST_CASE("mass_params rejects non-positive or non-finite masses") {
    CHECK_THROWS_AS(mass_params(0.0), DomainError);
    CHECK_THROWS_AS(mass_params(-1.0), DomainError);
    CHECK_THROWS_AS(mass_params(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(mass_params(std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(efimov_lambda(0.0), DomainError);
}

TEST_CASE("mass_params identities and monotonicity") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const MassParams p = mass_params(std::pow(10.0, u(gen)));
        CHECK(std::abs(p.nu + p.mu * p.mu / 4.0 - 1.0) < 4e-16);
        CHECK(p.mu > 0.0);
        CHECK(p.mu < 2.0);
        CHECK(p.nu > 0.0);
        CHECK(p.nu < 1.0);
    }
    MassParams prev = mass_params(1e-3);
    for (int i = 1; i < 100; ++i) {
        const MassParams p = mass_params(std::pow(10.0, -3.0 + 6.0 * i / 99));
        CHECK(p.mu < prev.mu);
        CHECK(p.nu > prev.nu);
        prev = p;
    }
}

TEST_CASE("efimov_lambda reference values") {
    // 50-digit evaluations of the closed form
    CHECK(efimov_lambda(1.0) == doctest::Approx(0.13687705445811213).epsilon(1e-13));
    CHECK(efimov_lambda(0.5) == doctest::Approx(0.23591470575645375).epsilon(1e-13));
    CHECK(efimov_lambda(0.1) == doctest::Approx(0.80195598308232513).epsilon(1e-13));
}

TEST_CASE("efimov_lambda positive and strictly decreasing") {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        const double v = efimov_lambda(std::pow(10.0, -3.0 + 6.0 * i / 99));
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("critical_mass_star") {
    const double ms = critical_mass_star(1e-10);
    CHECK(std::abs(1.0 / ms - 13.607) <= 0.001);
    CHECK(1.0 / ms == doctest::Approx(13.606965697899388).epsilon(1e-9));
    CHECK(std::abs(efimov_lambda(ms) - 1.0) <= 1e-8);
    CHECK(ms < critical_mass_double_star());
    CHECK_THROWS_AS(critical_mass_star(0.0), DomainError);
}

TEST_CASE("mass_of_s") {
    const double tol = 1e-10;
    const double m0 = mass_of_s(0.0, tol);
    CHECK(std::abs(m0 - critical_mass_star(tol)) <= 2 * tol);
    const double mh = mass_of_s(0.5, tol);
    const double m1 = mass_of_s(1.0, tol);
    CHECK(std::abs(1.0 / m1 - 8.62) <= 0.01);
    CHECK(1.0 / m1 == doctest::Approx(8.6185769).epsilon(1e-7));
    CHECK(1.0 / mh == doctest::Approx(12.3130993).epsilon(1e-7));
    CHECK(m0 < mh);
    CHECK(mh < m1);
    double prev = 0.0;
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double m = mass_of_s(s, tol);
        CHECK(m > prev);
        prev = m;
    }
    CHECK_THROWS_AS(mass_of_s(-0.1, tol), DomainError);
    CHECK_THROWS_AS(mass_of_s(1.1, tol), DomainError);
}

TEST_CASE("critical_mass_double_star") {
    const double mss = critical_mass_double_star();
    CHECK(std::abs(1.0 / mss - 8.62) <= 0.01);
    CHECK(mss == mass_of_s(1.0));
    CHECK(mss > critical_mass_star());
    CHECK(mss < existence_threshold());
}
