#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tempest/diagnostics.hpp"
#include "tempest/rng.hpp"

using namespace tempest;

TEST_CASE("empirical_lt trivial inputs") {
    const std::vector<double> zeros(100, 0.0);
    const std::vector<double> grid = {0.5, 1.0, 2.0};
    const auto t = empirical_lt(zeros, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(t.values[i] == 1.0);
        CHECK(t.se[i] == 0.0);
    }

    const std::vector<double> two = {0.0, std::log(2.0)};
    const std::vector<double> one = {1.0};
    CHECK(empirical_lt(two, one).values[0] == doctest::Approx(0.75).epsilon(1e-12));

    CHECK_THROWS_AS(empirical_lt(std::vector<double>{}, grid), std::domain_error);
}

TEST_CASE("empirical_pgf trivial inputs") {
    const std::vector<double> zeros(50, 0.0);
    const std::vector<double> grid = {0.0, 0.5, 1.0};
    const auto t = empirical_pgf(std::span<const double>(zeros), grid);
    for (double v : t.values) CHECK(v == 1.0);

    const std::vector<double> xs = {0.0, 1.0};
    const std::vector<double> half = {0.5};
    CHECK(empirical_pgf(std::span<const double>(xs), half).values[0] ==
          doctest::Approx(0.75).epsilon(1e-12));

    // s = 0 counts zeros
    const std::vector<double> mix = {0.0, 0.0, 3.0, 7.0};
    const std::vector<double> zero = {0.0};
    CHECK(empirical_pgf(std::span<const double>(mix), zero).values[0] == 0.5);
}

TEST_CASE("empirical_lt is pointwise nonincreasing in z") {
    RngStream rng(1);
    std::vector<double> xs(5000);
    for (auto& x : xs) x = rng.exponential() * 3.0;
    std::vector<double> grid;
    for (double z = 0.1; z < 6.0; z *= 1.7) grid.push_back(z);
    const auto t = empirical_lt(xs, grid);
    for (std::size_t i = 1; i < t.values.size(); ++i) CHECK(t.values[i] <= t.values[i - 1]);
}

TEST_CASE("SE shrinks like 1/sqrt(m)") {
    RngStream rng(2);
    std::vector<double> xs(40000);
    for (auto& x : xs) x = rng.exponential();
    const std::vector<double> grid = {0.5, 1.0, 2.0};
    const auto small = empirical_lt(std::span<const double>(xs.data(), 10000), grid);
    const auto big = empirical_lt(xs, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ratio = small.se[i] / big.se[i];
        CHECK(ratio > 1.8);
        CHECK(ratio < 2.2);
    }
}

TEST_CASE("sup_gap in-band logic") {
    EmpiricalTransform t;
    t.grid = {1.0, 2.0};
    t.values = {0.5, 0.25};
    t.se = {0.001, 0.001};
    t.m = 1000;

    const auto exact = sup_gap(t, [&](double z) { return z == 1.0 ? 0.5 : 0.25; });
    CHECK(exact.sup_gap == 0.0);
    CHECK(exact.in_band_fraction == 1.0);

    const auto shifted = sup_gap(t, [&](double z) { return (z == 1.0 ? 0.5 : 0.25) - 0.02; });
    CHECK(shifted.in_band_fraction == 0.0);
    CHECK(shifted.sup_gap == doctest::Approx(0.02));
}

TEST_CASE("sup_gap is symmetric in data and target") {
    EmpiricalTransform a, b;
    a.grid = b.grid = {1.0, 2.0, 3.0};
    a.values = {0.9, 0.5, 0.3};
    b.values = {0.85, 0.52, 0.31};
    a.se = b.se = {0.01, 0.01, 0.01};
    auto eval_b = [&](double z) { return b.values[static_cast<std::size_t>(z) - 1]; };
    auto eval_a = [&](double z) { return a.values[static_cast<std::size_t>(z) - 1]; };
    CHECK(sup_gap(a, eval_b).sup_gap == doctest::Approx(sup_gap(b, eval_a).sup_gap));
}

TEST_CASE("ks_two_sample basics") {
    std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    const auto same = ks_two_sample(x, x);
    CHECK(same.statistic == 0.0);
    CHECK_FALSE(same.reject);

    RngStream rng(3);
    const std::size_t n = 10000;
    std::vector<double> u1(n), u2(n);
    for (auto& v : u1) v = rng.uniform();
    for (auto& v : u2) v = rng.uniform() + 0.5;
    const auto shifted = ks_two_sample(u1, u2);
    CHECK(shifted.statistic > 0.45);
    CHECK(shifted.statistic < 0.55);
    CHECK(shifted.reject);

    CHECK_THROWS_AS(ks_two_sample(std::vector<double>{}, x), std::domain_error);
}
