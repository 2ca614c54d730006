#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tempest/numerics.hpp"
#include "tempest/quadrature.hpp"

using namespace tempest;

namespace {
double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }
} // namespace

TEST_CASE("gamma function values and domain") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rel_err(gamma_fn(0.5), std::sqrt(std::numbers::pi)) < 1e-13);
    CHECK(rel_err(gamma_fn(5.0), 24.0) < 1e-13);
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
}

TEST_CASE("gamma recurrence on [0.1, 10]") {
    for (double x = 0.1; x <= 10.0; x += 0.1)
        CHECK(rel_err(gamma_fn(x + 1.0), x * gamma_fn(x)) < 1e-12);
}

TEST_CASE("levy_integral closed-form grid") {
    // int_0^inf (1 - e^{-zx}) e^{-ax} x^{-1-alpha} dx
    //   = Gamma(1-alpha)/alpha ((a+z)^alpha - a^alpha)
    for (double alpha : {0.3, 0.5, 0.7}) {
        for (double a : {0.5, 1.0, 2.0}) {
            for (double z : {0.1, 1.0, 5.0}) {
                auto f = [&](double x) {
                    return -std::expm1(-z * x) * std::exp(-a * x) *
                           std::pow(x, -1.0 - alpha);
                };
                const double got = levy_integral(f, alpha, 1.0 + alpha);
                const double want = gamma_fn(1.0 - alpha) / alpha *
                                    (std::pow(a + z, alpha) - std::pow(a, alpha));
                CHECK(rel_err(got, want) < 1e-8);
            }
        }
    }
}

TEST_CASE("levy_integral untempered and zero cases") {
    const double alpha = 0.5;
    auto f = [&](double x) { return -std::expm1(-x) * std::pow(x, -1.5); };
    // Gamma(1-alpha)/alpha z^alpha = 2 sqrt(pi)
    CHECK(rel_err(levy_integral(f, alpha, 1.0 + alpha), 2.0 * std::sqrt(std::numbers::pi)) <
          1e-10);

    auto zero = [](double) { return 0.0; };
    CHECK(levy_integral(zero, alpha, 1.0 + alpha) == 0.0);
}

TEST_CASE("levy_integral crude Riemann cross-check") {
    // independent oracle for alpha=.5, a=1, z=1: midpoint sum after x = u^2,
    // which turns the integrand into a bounded function of u
    const double alpha = 0.5, a = 1.0, z = 1.0;
    auto f = [&](double x) {
        return -std::expm1(-z * x) * std::exp(-a * x) * std::pow(x, -1.0 - alpha);
    };
    double riemann = 0.0;
    const double h = 1e-4;
    for (double u = 0.5 * h; u * u < 80.0; u += h) riemann += f(u * u) * 2.0 * u * h;
    const double got = levy_integral(f, alpha, 1.0 + alpha);
    CHECK(rel_err(got, riemann) < 1e-4);
    CHECK(rel_err(got, 2.0 * std::sqrt(std::numbers::pi) * (std::sqrt(2.0) - 1.0)) < 1e-10);
}

TEST_CASE("quadrature failure carries last estimate") {
    QuadratureSpec tight;
    tight.rel_tol = 1e-15;
    tight.abs_tol = 1e-300;
    tight.max_subdivisions = 3;
    auto wiggly = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
    CHECK_THROWS_AS(integrate(wiggly, 0.0, 1.0, tight), quadrature_error);
    try {
        integrate(wiggly, 0.0, 1.0, tight);
    } catch (const quadrature_error& e) {
        CHECK(std::isfinite(e.estimate()));
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("invert_monotone power and identity") {
    CHECK(rel_err(invert_monotone([](double s) { return std::sqrt(s); }, 100.0), 10000.0) <
          1e-10);
    CHECK(rel_err(invert_monotone([](double s) { return s; }, 7.0), 7.0) < 1e-10);
}

TEST_CASE("invert_monotone with slowly varying correction") {
    auto V = [](double s) {
        return std::sqrt(s) / (1.0 + 1.0 / std::log(std::numbers::e + s));
    };
    const double s = invert_monotone(V, 100.0);
    CHECK(std::abs(V(s) - 100.0) / 100.0 < 1e-10);
}

TEST_CASE("invert_monotone identity property on its range") {
    auto V = [](double s) { return std::pow(s, 0.7) * (2.0 + std::atan(s)); };
    for (double t : {0.5, 3.0, 42.0, 1e6}) {
        const double s = invert_monotone(V, t);
        CHECK(V(s) >= t * (1.0 - 1e-8));
        CHECK(V(s) <= t * (1.0 + 1e-8));
    }
}

TEST_CASE("invert_monotone failure for bounded V") {
    auto V = [](double s) { return 1.0 - std::exp(-s); };
    CHECK_THROWS_AS(invert_monotone(V, 2.0), inversion_error);
}
