#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tempest/tempering.hpp"

using namespace tempest;

TEST_CASE("eval basics per kind") {
    CHECK(TemperingFunction::identity().eval(3.7) == 1.0);
    CHECK(TemperingFunction::exponential(2.0).eval(1.0) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    const auto tr = TemperingFunction::truncation(1.0);
    CHECK(tr.eval(1.0) == 0.0);
    CHECK(tr.eval(0.999) == 1.0);
    const auto ef = TemperingFunction::exp_floor(0.4, 1.0);
    CHECK(ef.eval(0.0) == 1.0);
    CHECK(ef.eval(2.0) == doctest::Approx(0.4 + 0.6 * std::exp(-2.0)));
    CHECK_THROWS_AS(tr.eval(-0.1), std::domain_error);
}

TEST_CASE("eval at zero is one for all kinds") {
    const auto tab = TemperingFunction::table({1.0, 2.0}, {1.0, 0.25}, 0.1);
    for (const auto& q :
         {TemperingFunction::identity(), TemperingFunction::exponential(3.0),
          TemperingFunction::truncation(0.5), TemperingFunction::exp_floor(0.2, 1.0), tab})
        CHECK(q.eval(0.0) == 1.0);
}

TEST_CASE("rescale is kind-preserving and exact") {
    const auto e = TemperingFunction::exponential(1.0).rescale(2.0);
    CHECK(e.kind() == TemperingKind::exponential);
    CHECK(e.rate() == 0.5);

    const auto i = TemperingFunction::identity().rescale(1e6);
    CHECK(i.kind() == TemperingKind::identity);

    const auto t = TemperingFunction::truncation(1.0).rescale(3.0);
    CHECK(t.kind() == TemperingKind::truncation);
    CHECK(t.rate() == 3.0);

    CHECK_THROWS_AS(TemperingFunction::identity().rescale(0.0), std::domain_error);
}

TEST_CASE("rescale composes multiplicatively, exactly on a grid") {
    const auto tab = TemperingFunction::table({0.5, 1.0, 4.0}, {1.0, 0.7, 0.2}, 0.0);
    for (const auto& q :
         {TemperingFunction::exponential(1.3), TemperingFunction::truncation(0.8),
          TemperingFunction::exp_floor(0.25, 2.0), TemperingFunction::identity(), tab}) {
        const auto lhs = q.rescale(2.0).rescale(3.5);
        const auto rhs = q.rescale(7.0);
        for (double x : {0.0, 0.1, 0.9, 1.0, 2.8, 5.6, 30.0})
            CHECK(lhs.eval(x) == rhs.eval(x));
    }
}

TEST_CASE("bound dominates eval and zeta matches the far tail") {
    for (const auto& q :
         {TemperingFunction::identity(), TemperingFunction::exponential(0.7),
          TemperingFunction::exp_floor(0.4, 1.0)}) {
        for (double x = 0.0; x < 50.0; x += 0.37) {
            CHECK(q.eval(x) >= 0.0);
            CHECK(q.eval(x) <= q.bound());
        }
        CHECK(std::abs(q.eval(1e8) - q.limit_at_infinity()) < 1e-6);
    }
    CHECK(TemperingFunction::identity().limit_at_infinity() == 1.0);
    CHECK(TemperingFunction::exponential(1.0).limit_at_infinity() == 0.0);
    CHECK(TemperingFunction::truncation(1.0).limit_at_infinity() == 0.0);
    CHECK(TemperingFunction::exp_floor(0.4, 1.0).limit_at_infinity() == 0.4);
}

TEST_CASE("q(0+) -> 1 numerically") {
    for (const auto& q :
         {TemperingFunction::identity(), TemperingFunction::exponential(2.0),
          TemperingFunction::truncation(0.5), TemperingFunction::exp_floor(0.1, 5.0)}) {
        double prev = std::abs(q.eval(1e-4) - 1.0);
        for (int k = 5; k <= 8; ++k) {
            const double gap = std::abs(q.eval(std::pow(10.0, -k)) - 1.0);
            CHECK(gap <= prev + 1e-15);
            prev = gap;
        }
        CHECK(prev < 1e-6);
    }
}

TEST_CASE("table kind is a left-continuous step function") {
    const auto q = TemperingFunction::table({1.0, 3.0}, {1.0, 0.5}, 0.125);
    CHECK(q.eval(0.5) == 1.0);
    CHECK(q.eval(1.0) == 1.0);   // value on (0, 1]
    CHECK(q.eval(1.001) == 0.5); // value on (1, 3]
    CHECK(q.eval(3.0) == 0.5);
    CHECK(q.eval(3.001) == 0.125);
    CHECK(q.bound() == 1.0);
    CHECK_THROWS_AS(TemperingFunction::table({1.0}, {0.9}, 0.0), std::domain_error);
    CHECK_THROWS_AS(TemperingFunction::table({2.0, 1.0}, {1.0, 0.5}, 0.0), std::domain_error);
}

TEST_CASE("integrability: identity alpha=.5 evaluates to 4") {
    const auto rep = validate_integrability(TemperingFunction::identity(), 0.5);
    CHECK(rep.pass);
    CHECK(rep.value == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(rep.head == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rep.tail == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("integrability: truncation alpha=.3 is a pure head integral") {
    const auto rep = validate_integrability(TemperingFunction::truncation(1.0), 0.3);
    CHECK(rep.pass);
    CHECK(rep.value == doctest::Approx(1.0 / 0.7).epsilon(1e-9));
    CHECK(rep.tail == doctest::Approx(0.0));
}

TEST_CASE("integrability: exponential bounded by identity") {
    const auto rep = validate_integrability(TemperingFunction::exponential(1.0), 0.5);
    CHECK(rep.pass);
    CHECK(rep.value < 4.0);
    CHECK(rep.value > 0.0);
}
