#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "trimer/errors.hpp"
#include "trimer/mass_params.hpp"
#include "trimer/quadrature.hpp"
#include "trimer/special_functions.hpp"

using namespace trimer;

namespace {

// P_l(y) = (1/(2^l l!)) d^l/dy^l (y^2 - 1)^l, expanded as a polynomial.
double rodrigues(int l, double y) {
    std::vector<double> c(2 * l + 1, 0.0);  // coefficients of (y^2-1)^l
    double binom = 1.0;
    for (int k = 0; k <= l; ++k) {
        c[2 * k] = binom * (((l - k) % 2) ? -1.0 : 1.0);
        binom = binom * (l - k) / (k + 1);
    }
    for (int d = 0; d < l; ++d) {
        for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] = c[i + 1] * static_cast<double>(i + 1);
        c.back() = 0.0;
    }
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * y + c[i];
    double norm = 1.0;
    for (int k = 1; k <= l; ++k) norm *= 2.0 * k;
    return v / norm;
}

std::vector<double> geometric(double a, double b, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
    return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("legendre_p small cases") {
    CHECK(legendre_p(1, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(legendre_p(3, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(legendre_p(0, -0.4) == 1.0);
    CHECK(std::abs(legendre_p(5, 0.7) - rodrigues(5, 0.7)) < 1e-12);
    CHECK(std::abs(legendre_p(5, 0.7) - (-0.36519875)) < 1e-12);
    CHECK_THROWS_AS(legendre_p(2, 1.0000001), DomainError);
    CHECK_THROWS_AS(legendre_p(-1, 0.0), DomainError);
}

TEST_CASE("legendre_p agrees with the Rodrigues oracle") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double y = u(gen);
        for (int l = 0; l <= 7; ++l) CHECK(std::abs(legendre_p(l, y) - rodrigues(l, y)) < 1e-12);
    }
}

TEST_CASE("phi_ell reference values") {
    const PhiEval p = phi_ell(1, 2.0);
    CHECK(p.method == PhiMethod::closed_form);
    CHECK(p.value == doctest::Approx(-0.197224577336219).epsilon(1e-13));
    const double oracle = integrate_finite([](double y) { return y / (y + 2.0); }, -1.0, 1.0, 1e-14).value;
    CHECK(rel(p.value, oracle) < 1e-12);

    // 30-digit quadrature values
    struct Ref {
        int l;
        double z;
        int p;
        double v;
    };
    const Ref refs[] = {
        {1, 3.0, 1, -0.0794415416798359282516963643745},
        {3, 3.0, 1, -0.00160570860988782661895698519846},
        {5, 3.0, 1, -3.82157212890825349937474444974e-5},
        {3, 1.5, 1, -0.0417304165193294011755317076704},
        {3, 50.0, 1, -1.82938443740177273941304252374e-8},
        {5, 50.0, 1, -1.47858871467973899785562391019e-12},
        {5, 1.1, 1, -0.131282841327834036614177197575},
        {7, 4.0, 1, -8.69059445651730492677019187883e-8},
        {3, 3.0, 2, -0.00228608304360957846267998376035},
        {1, 3.0, 2, -0.0568528194400546905827678785418},
        {2, 3.0, 1, 0.0109133472792890224240175789563},
        {2, 1.2, 2, 1.91303156338041218974247619217},
        {0, 5.0, 2, 0.0833333333333333333333333333333},
    };
    for (const Ref& r : refs) CHECK(rel(legendre_resolvent(r.l, r.z, r.p), r.v) < 1e-11);
}

TEST_CASE("phi_ell method tags and errors") {
    CHECK(phi_ell(3, 2.0).method == PhiMethod::quadrature);
    CHECK(phi_ell(3, 100.0).method == PhiMethod::asymptotic);
    CHECK(phi_ell(1, 1e6).method == PhiMethod::asymptotic);
    CHECK(to_string(PhiMethod::closed_form) == "closed-form");
    CHECK_THROWS_AS(phi_ell(1, 1.0), DomainError);
    CHECK_THROWS_AS(phi_ell(1, 0.5), DomainError);
    CHECK_THROWS_AS(phi_ell(2, 3.0), UnsupportedSectorError);
    CHECK_THROWS_AS(phi_ell(0, 3.0), UnsupportedSectorError);
}

TEST_CASE("phi_ell ordering, sign, bound") {
    CHECK(phi_ell(1, 3.0).value < phi_ell(3, 3.0).value);
    CHECK(phi_ell(3, 3.0).value < 0.0);
    for (double z : {1.1, 2.0, 10.0}) CHECK(std::abs(phi_ell(1, z).value) <= (2.0 / 3.0) / ((z - 1) * (z - 1)));
}

TEST_CASE("phi_ell monotone and ordered on a geometric grid") {
    const auto zs = geometric(1.05, 1e4, 120);
    for (int l : {1, 3, 5}) {
        double prev = -1e300;
        for (double z : zs) {
            const double v = phi_ell(l, z).value;
            CHECK(v < 0.0);
            CHECK(v > prev);
            prev = v;
        }
    }
    for (double z : zs) {
        CHECK(phi_ell(1, z).value < phi_ell(3, z).value);
        CHECK(phi_ell(3, z).value < phi_ell(5, z).value);
    }
}

TEST_CASE("branches agree over two decades around the switch") {
    const PhiConfig cfg;
    for (double z : geometric(cfg.z_switch / 10, cfg.z_switch * 10, 41)) {
        for (int p : {1, 2}) {
            const double series = legendre_resolvent(1, z, p, PhiMethod::asymptotic);
            CHECK(rel(legendre_resolvent(1, z, p, PhiMethod::closed_form), series) < 1e-9);
            CHECK(rel(legendre_resolvent(1, z, p, PhiMethod::quadrature), series) < 1e-9);
            for (int l : {3, 5}) {
                CHECK(rel(legendre_resolvent(l, z, p, PhiMethod::quadrature),
                          legendre_resolvent(l, z, p, PhiMethod::asymptotic)) < 1e-9);
            }
        }
    }
}

TEST_CASE("closed form of phi_1 loses accuracy at large z; the series does not") {
    const double z = 1e6;
    const double v = phi_ell(1, z).value;
    // -(2/3) z^-2 - (2/5) z^-4
    CHECK(rel(v, -2.0 / 3.0 / (z * z) - 0.4 / std::pow(z, 4)) < 1e-14);
}

TEST_CASE("legendre_moment matches quadrature") {
    for (int l = 0; l <= 5; ++l) {
        for (int k = 0; k <= 12; ++k) {
            const double q =
                integrate_finite([=](double y) { return std::pow(y, k) * legendre_p(l, y); }, -1.0, 1.0, 1e-14).value;
            CHECK(std::abs(legendre_moment(l, k) - q) < 1e-13);
        }
    }
}

TEST_CASE("weight_integral matches the Beta-function value") {
    for (int l = 0; l <= 6; ++l) {
        // 2^(2l+1) (l!)^2 / (2l+1)!
        double f = 1.0;
        for (int j = 1; j <= l; ++j) f *= j;
        double g = 1.0;
        for (int j = 1; j <= 2 * l + 1; ++j) g *= j;
        CHECK(rel(weight_integral(l), std::ldexp(f * f / g, 2 * l + 1)) < 1e-13);
    }
}

TEST_CASE("correction constants") {
    const double ms = critical_mass_star(1e-13);
    const double c1 = c_ell(1, ms);
    const double c3 = c_ell(3, ms);
    CHECK(std::abs(c1 - 2.74) <= 0.01);
    CHECK(std::abs(c3 - 6.07) <= 0.01);
    CHECK(rel(c1, 2.74025217109903146916638980905) < 1e-9);
    CHECK(rel(c3, 6.07167252149644011717623650326) < 1e-9);
    for (int l : {1, 3}) {
        const double c = c_ell(l, ms);
        auto envelope = [&](double z) { return c * std::ldexp(weight_integral(l), -l) / std::pow(z, l + 1); };
        CHECK(rel(envelope(1.0 + ms), std::abs(phi_ell(l, 1.0 + ms).value)) < 1e-8);
        for (double z : geometric(1.0 + ms, 1e3, 30)) CHECK(std::abs(phi_ell(l, z).value) <= envelope(z) * (1 + 1e-12));
    }
    CHECK_THROWS_AS(c_ell(2, ms), UnsupportedSectorError);
}

TEST_CASE("theta") {
    const MassParams p = mass_params(1.0);
    CHECK(theta(1.0, 0.0, p) == 0.0);
    CHECK(theta(2.5, 0.0, p) == 0.0);
    const double r = 1e-6;
    const double t = theta(1.0, r, p);
    // 50-digit value of (sqrt(nu r^2 + 1) - 1)/r^2 at nu = 3/4
    CHECK(rel(t * t / (r * r), 0.3749999999999296875000000263671875) < 1e-12);
    CHECK(rel(t * t / (r * r), p.nu / 2) < 1e-6);
    const double R = 1e6;
    CHECK(rel(theta(1.0, R, p) / std::sqrt(R), std::pow(p.nu, 0.25)) < 1e-5);
    CHECK_THROWS_AS(theta(0.0, 1.0, p), DomainError);
    CHECK_THROWS_AS(theta(1.0, -1.0, p), DomainError);
}
