#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "orlicz/distributions.hpp"

using namespace orlicz;

namespace {

std::vector<DistributionSpec> zoo() {
    return {
        DistributionSpec{Gaussian{0.0, 1.0}},
        DistributionSpec{Gaussian{1.5, 0.7}},
        DistributionSpec{Weibull{1.0, 1.0}},
        DistributionSpec{Weibull{2.0, 3.0}},
        DistributionSpec{SymmetrizedWeibull{1.0, 2.0}},
        DistributionSpec{Rademacher{1.0}},
        DistributionSpec{UniformSymmetric{2.0}},
        DistributionSpec{PointMass{3.0}},
        DistributionSpec{Exponential{1.0}},
    };
}

std::vector<DistributionSpec> continuous_zoo() {
    return {
        DistributionSpec{Gaussian{0.0, 1.0}},
        DistributionSpec{Gaussian{1.5, 0.7}},
        DistributionSpec{Weibull{1.0, 1.0}},
        DistributionSpec{Weibull{2.0, 3.0}},
        DistributionSpec{SymmetrizedWeibull{1.0, 2.0}},
        DistributionSpec{UniformSymmetric{2.0}},
        DistributionSpec{Exponential{1.0}},
    };
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((DistributionSpec{Weibull{1.0, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS((DistributionSpec{SymmetrizedWeibull{1.0, 0.99}}), std::invalid_argument);
    CHECK_THROWS_AS((DistributionSpec{Gaussian{0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS((DistributionSpec{Exponential{-1.0}}), std::invalid_argument);
    CHECK_NOTHROW((DistributionSpec{Weibull{1.0, 1.0}}));
}

TEST_CASE("is_centered flags") {
    CHECK(DistributionSpec{Gaussian{0.0, 1.0}}.is_centered());
    CHECK_FALSE(DistributionSpec{Gaussian{0.1, 1.0}}.is_centered());
    CHECK(DistributionSpec{SymmetrizedWeibull{1.0, 2.0}}.is_centered());
    CHECK(DistributionSpec{Rademacher{1.0}}.is_centered());
    CHECK(DistributionSpec{UniformSymmetric{1.0}}.is_centered());
    CHECK_FALSE(DistributionSpec{Weibull{1.0, 2.0}}.is_centered());
    CHECK_FALSE(DistributionSpec{PointMass{1.0}}.is_centered());
    CHECK(DistributionSpec{PointMass{0.0}}.is_centered());
    CHECK_FALSE(DistributionSpec{Exponential{1.0}}.is_centered());
}

TEST_CASE("moment_abs closed forms") {
    const DistributionSpec w{Weibull{1.0, 2.0}};
    for (double alpha : {1.0, 2.0, 3.5, 7.0})
        CHECK(moment_abs(w, alpha) == doctest::Approx(std::tgamma(alpha / 2.0 + 1.0)).epsilon(1e-12));
    CHECK(moment_abs(DistributionSpec{Weibull{2.0, 3.0}}, 3.0) ==
          doctest::Approx(8.0 * std::tgamma(2.0)).epsilon(1e-12));
    CHECK(moment_abs(DistributionSpec{PointMass{3.0}}, 2.0) == doctest::Approx(9.0));
    CHECK(moment_abs(DistributionSpec{Gaussian{0.0, 1.0}}, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(moment_abs(DistributionSpec{PointMass{1.0}}, 0.5), std::invalid_argument);
}

TEST_CASE("moment_abs quadrature agrees with closed forms") {
    for (const auto& d : continuous_zoo()) {
        for (double alpha = 1.0; alpha <= 20.0; alpha += 0.5) {
            const double exact = moment_abs(d, alpha);
            const double quad = moment_abs_quadrature(d, alpha);
            CAPTURE(d.describe());
            CAPTURE(alpha);
            CHECK(quad == doctest::Approx(exact).epsilon(1e-8));
        }
    }
}

TEST_CASE("mgf closed forms and divergence") {
    CHECK(mgf(DistributionSpec{Gaussian{0.0, 2.0}}, 1.5) ==
          doctest::Approx(std::exp(4.0 * 1.5 * 1.5 / 2.0)));
    CHECK(mgf(DistributionSpec{Rademacher{1.0}}, 0.7) == doctest::Approx(std::cosh(0.7)));
    CHECK(mgf(DistributionSpec{Exponential{1.0}}, 1.0) == kInf);
    CHECK(mgf(DistributionSpec{Exponential{1.0}}, 0.5) == doctest::Approx(2.0));
    CHECK(mgf(DistributionSpec{Weibull{2.0, 1.0}}, 0.5) == kInf);
    CHECK(mgf(DistributionSpec{PointMass{3.0}}, 0.2) == doctest::Approx(std::exp(0.6)));
}

TEST_CASE("mgf at zero is one and convex for centered laws") {
    const std::vector<double> grid = {-1.5, -1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0, 1.5};
    for (const auto& d : zoo()) {
        if (!d.is_centered()) continue;
        CHECK(mgf(d, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            const double a = mgf(d, grid[i - 1]), b = mgf(d, grid[i]), c = mgf(d, grid[i + 1]);
            if (std::isfinite(a) && std::isfinite(c))
                CHECK(b <= 0.5 * (a + c) + 1e-9 * (a + c));
        }
    }
}

TEST_CASE("log_mgf matches log of mgf where finite") {
    for (const auto& d : zoo()) {
        for (double t : {-2.0, -0.3, 0.0, 0.4, 1.7}) {
            const double m = mgf(d, t);
            if (!std::isfinite(m)) {
                CHECK(log_mgf(d, t) == kInf);
            } else {
                CHECK(log_mgf(d, t) == doctest::Approx(std::log(m)).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("tail closed forms") {
    CHECK(tail(DistributionSpec{Weibull{1.0, 2.0}}, 1.5) == doctest::Approx(std::exp(-2.25)));
    CHECK(tail(DistributionSpec{PointMass{2.0}}, 1.0) == 1.0);
    CHECK(tail(DistributionSpec{PointMass{2.0}}, 3.0) == 0.0);
    CHECK(tail(DistributionSpec{Gaussian{0.0, 1.0}}, 0.0) == doctest::Approx(1.0));
    CHECK(tail(DistributionSpec{Gaussian{0.0, 1.0}}, 1.0) == doctest::Approx(0.31731050786291404).epsilon(1e-10));
    CHECK(tail(DistributionSpec{UniformSymmetric{2.0}}, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("tail is non-increasing on a grid") {
    for (const auto& d : zoo()) {
        double prev = 2.0;
        for (double t = 0.0; t <= 10.0; t += 0.05) {
            const double v = tail(d, t);
            CHECK(v <= prev + 1e-15);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            prev = v;
        }
    }
}

TEST_CASE("sampling determinism and point mass") {
    const DistributionSpec pm{PointMass{2.5}};
    const auto batch = sample(pm, 5, 42);
    for (double v : batch.values) CHECK(v == 2.5);

    const DistributionSpec g{Gaussian{0.0, 1.0}};
    const auto b1 = sample(g, 1000, 7);
    const auto b2 = sample(g, 1000, 7);
    CHECK(b1.values == b2.values);
    const auto b3 = sample(g, 1000, 8);
    CHECK(b1.values != b3.values);
}

TEST_CASE("sample means converge") {
    const auto rad = sample(DistributionSpec{Rademacher{1.0}}, 1000000, 1);
    double acc = 0.0;
    for (double v : rad.values) acc += v;
    CHECK(std::abs(acc / 1e6) < 0.005);

    // E W for Weibull(1,2) is Gamma(3/2) = sqrt(pi)/2
    const auto wb = sample(DistributionSpec{Weibull{1.0, 2.0}}, 200000, 3);
    acc = 0.0;
    for (double v : wb.values) acc += v;
    CHECK(acc / 2e5 == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(0.01));
}

TEST_CASE("scaled law") {
    const auto d = scaled(DistributionSpec{Weibull{1.0, 2.0}}, 3.0);
    CHECK(moment_abs(d, 2.0) == doctest::Approx(9.0 * std::tgamma(2.0)).epsilon(1e-12));
    const auto e = scaled(DistributionSpec{Exponential{2.0}}, 2.0);
    CHECK(mean(e) == doctest::Approx(1.0));
}
