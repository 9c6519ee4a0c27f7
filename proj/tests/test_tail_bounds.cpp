#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "orlicz/tail_bounds.hpp"

using namespace orlicz;

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(BernsteinParams(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BernsteinParams(1.0, -1.0), std::invalid_argument);
    const BernsteinParams ok(1.0, 1.0);
    CHECK_THROWS_AS(g_piecewise(-0.1, ok), std::invalid_argument);
    CHECK_THROWS_AS(bernstein_min_form(-0.1, ok), std::invalid_argument);
    CHECK_THROWS_AS(subexp_params(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(chaos_tail_bound(-1.0, 1.0, 1.0, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(chaos_tail_bound(1.0, 1.0, 1.0, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(hanson_wright_bound(1.0, 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("g is continuous at the knee and matches both branch formulas") {
    for (const auto& params : {BernsteinParams(1.0, 1.0), BernsteinParams(2.0, 0.3),
                               BernsteinParams(0.4, 5.0)}) {
        const double knee = params.a * params.a * params.b;
        const double left = g_piecewise(knee * (1.0 - 1e-13), params);
        const double right = g_piecewise(knee * (1.0 + 1e-13), params);
        const double at = g_piecewise(knee, params);
        CHECK(std::abs(left - at) <= 1e-11 * std::max(1.0, at));
        CHECK(std::abs(right - at) <= 1e-11 * std::max(1.0, at));
        CHECK(at == doctest::Approx(knee * knee / (2.0 * params.a * params.a)).epsilon(1e-14));
        CHECK(at == doctest::Approx(params.b * knee - 0.5 * params.a * params.a * params.b *
                                                          params.b).epsilon(1e-12));

        CHECK(g_piecewise(0.5 * knee, params) ==
              doctest::Approx(0.25 * knee * knee / (2.0 * params.a * params.a)));
        CHECK(g_piecewise(3.0 * knee, params) ==
              doctest::Approx(params.b * 3.0 * knee -
                              0.5 * params.a * params.a * params.b * params.b));
    }
}

TEST_CASE("g is convex and increasing") {
    const BernsteinParams params(1.3, 0.8);
    double prev = -1.0, prev_slope = -kInf;
    const double h = 0.005;
    for (double s = 0.0; s < 6.0; s += h) {
        const double v = g_piecewise(s, params);
        CHECK(v >= prev - 1e-15);
        const double slope = (g_piecewise(s + h, params) - v) / h;
        CHECK(slope >= prev_slope - 1e-12);
        prev = v;
        prev_slope = slope;
    }
}

TEST_CASE("g dominates the min form everywhere") {
    for (const auto& params : {BernsteinParams(1.0, 1.0), BernsteinParams(2.0, 0.3),
                               BernsteinParams(0.4, 5.0), BernsteinParams(3.0, 2.0)}) {
        const double knee = params.a * params.a * params.b;
        for (int i = 0; i < 1000; ++i) {
            const double t = 8.0 * knee * i / 999.0;
            CHECK(g_piecewise(t, params) >= bernstein_min_form(t, params) - 1e-14);
        }
    }
}

TEST_CASE("min form equals the smaller branch") {
    const BernsteinParams params(1.0, 2.0);
    // branches cross at t = a^2 b
    CHECK(bernstein_min_form(1.0, params) == doctest::Approx(0.5));   // quadratic side
    CHECK(bernstein_min_form(4.0, params) == doctest::Approx(4.0));   // linear side
    CHECK(bernstein_min_form(2.0, params) == doctest::Approx(2.0));   // crossover
}

TEST_CASE("subexp params satisfy a b = sqrt 2") {
    for (double psi1 : {0.2, 1.0, 7.5}) {
        for (double C : {0.5, 1.0, 4.0}) {
            const auto params = subexp_params(psi1, C);
            CHECK(params.a * params.b == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
            CHECK(params.a == doctest::Approx(std::sqrt(2.0) * C * psi1));
        }
    }
}

TEST_CASE("chaos tail bound branch structure") {
    const double a_norm = 2.0, e_d = 1.5, C = 1.2;
    const int d = 3;
    const double scale = C * a_norm * std::pow(e_d, d);
    const double knee = 4.0 * scale;
    // both branches give exponent exactly 1 at the knee
    CHECK(chaos_tail_bound(knee, a_norm, e_d, d, C) ==
          doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(chaos_tail_bound(knee * (1.0 + 1e-12), a_norm, e_d, d, C) ==
          doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-9));
    // quadratic branch below, linear branch above
    CHECK(chaos_tail_bound(0.5 * knee, a_norm, e_d, d, C) ==
          doctest::Approx(2.0 * std::exp(-0.25)).epsilon(1e-14));
    CHECK(chaos_tail_bound(2.0 * knee, a_norm, e_d, d, C) ==
          doctest::Approx(2.0 * std::exp(-3.0)).epsilon(1e-14));
    // at t = 0 the bound is trivial
    CHECK(chaos_tail_bound(0.0, a_norm, e_d, d, C) == doctest::Approx(2.0));
    // non-increasing on a grid
    double prev = 3.0;
    for (int i = 0; i < 500; ++i) {
        const double t = 3.0 * knee * i / 499.0;
        const double v = chaos_tail_bound(t, a_norm, e_d, d, C);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("hanson wright crossover") {
    const double op = 1.5, K = 1.1, C = 2.0;
    const double s = C * op * K * K;
    // min switches from quadratic to linear at t = 4 s
    const double cross = 4.0 * s;
    CHECK(hanson_wright_bound(cross, op, K, C) ==
          doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-13));
    CHECK(hanson_wright_bound(0.5 * cross, op, K, C) ==
          doctest::Approx(2.0 * std::exp(-0.25)).epsilon(1e-13));
    CHECK(hanson_wright_bound(2.0 * cross, op, K, C) ==
          doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-13));
    CHECK(hanson_wright_bound(0.0, op, K, C) == doctest::Approx(2.0));
}

TEST_CASE("tail curve evaluation") {
    const BernsteinParams params(1.0, 1.0);
    const std::vector<double> grid = {0.0, 0.5, 1.0, 2.0};
    const auto curve = bernstein_tail_curve(grid, params, "bernstein");
    CHECK(curve.label == "bernstein");
    CHECK(curve.t == grid);
    REQUIRE(curve.value.size() == 4);
    CHECK(curve.value[0] == doctest::Approx(2.0));
    CHECK(curve.value[1] == doctest::Approx(2.0 * std::exp(-0.125)));
    CHECK(curve.value[2] == doctest::Approx(2.0 * std::exp(-0.5)));
    CHECK(curve.value[3] == doctest::Approx(2.0 * std::exp(-1.5)));
}
