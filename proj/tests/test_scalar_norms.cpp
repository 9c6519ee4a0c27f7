#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "orlicz/scalar_norms.hpp"

using namespace orlicz;

namespace {

MomentSource analytic(DistributionKind k) { return MomentSource::analytic(DistributionSpec{k}); }

const double ln2 = std::log(2.0);

}  // namespace

TEST_CASE("exp_moment closed forms") {
    // Weibull(1,p): W^p ~ Exponential(1), so E exp((W/K)^p) = (1 - K^{-p})^{-1}
    for (double p : {1.0, 2.0, 3.0}) {
        const auto src = analytic(Weibull{1.0, p});
        for (double K : {1.2, 2.0, 5.0}) {
            const double exact = 1.0 / (1.0 - std::pow(K, -p));
            CHECK(exp_moment(src, K, p) == doctest::Approx(exact).epsilon(1e-12));
        }
        CHECK(exp_moment(src, 1.0, p) == kInf);
        CHECK(exp_moment(src, 0.5, p) == kInf);
    }
    CHECK(exp_moment(analytic(PointMass{2.0}), 3.0, 2.0) ==
          doctest::Approx(std::exp(4.0 / 9.0)).epsilon(1e-14));
    // Gaussian(0,s), p=2: (1 - 2 s^2/K^2)^{-1/2}
    CHECK(exp_moment(analytic(Gaussian{0.0, 1.5}), 3.0, 2.0) ==
          doctest::Approx(1.0 / std::sqrt(1.0 - 2.0 * 2.25 / 9.0)).epsilon(1e-12));
    CHECK(exp_moment(analytic(Gaussian{0.0, 1.0}), 1.0, 2.0) == kInf);
    CHECK(exp_moment(analytic(Exponential{1.0}), 2.0, 2.0) == kInf);
}

TEST_CASE("exp_moment quadrature path matches a discretized oracle") {
    // Gaussian p=1: E exp(|X|/K) has the closed form 2 e^{s^2/(2K^2)} Phi(s/K) for X ~ N(0,s^2)
    const double s = 1.3, K = 2.1;
    const double exact = 2.0 * std::exp(s * s / (2.0 * K * K)) *
                         0.5 * std::erfc(-(s / K) / std::sqrt(2.0));
    CHECK(exp_moment(analytic(Gaussian{0.0, s}), K, 1.0) == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("exp_moment strictly decreasing in K") {
    for (const auto& src :
         {analytic(Weibull{1.0, 2.0}), analytic(Gaussian{0.0, 1.0}), analytic(Rademacher{1.0})}) {
        double prev = kInf;
        for (double K = 1.3; K < 20.0; K *= 1.4) {
            const double v = exp_moment(src, K, 2.0);
            if (std::isfinite(v) || std::isfinite(prev)) CHECK(v < prev);
            CHECK(v >= 1.0);
            prev = v;
        }
    }
}

TEST_CASE("luxemburg norm closed forms") {
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        const auto r = luxemburg_norm(analytic(Weibull{1.0, p}), p, 1e-9);
        CHECK(r.status == NormStatus::finite);
        CHECK(r.value == doctest::Approx(std::exp2(1.0 / p)).epsilon(1e-6));
        CHECK(r.bracket_hi - r.bracket_lo <= 1e-9);
        CHECK(exp_moment(analytic(Weibull{1.0, p}), r.value, p) <= 2.0 + 1e-9);
    }
    CHECK(luxemburg_norm(analytic(PointMass{3.0}), 2.0, 1e-10).value ==
          doctest::Approx(3.0 / std::sqrt(ln2)).epsilon(1e-9));
    CHECK(luxemburg_norm(analytic(Gaussian{0.0, 2.0}), 2.0, 1e-9).value ==
          doctest::Approx(2.0 * std::sqrt(8.0 / 3.0)).epsilon(1e-6));
}

TEST_CASE("luxemburg norm infinite status") {
    const auto r = luxemburg_norm(analytic(Exponential{1.0}), 2.0, 1e-9);
    CHECK(r.status == NormStatus::infinite);
    CHECK(r.value == kInf);
}

TEST_CASE("luxemburg norm of an all-zero sample is zero") {
    SampleBatch b{std::vector<double>(100, 0.0), 0, "zeros"};
    const auto r = luxemburg_norm(MomentSource::empirical(b), 2.0, 1e-9);
    CHECK(r.status == NormStatus::finite);
    CHECK(r.value == 0.0);
}

TEST_CASE("empirical luxemburg converges to analytic") {
    const auto batch = sample(DistributionSpec{Weibull{1.0, 2.0}}, 1000000, 11);
    const auto r = luxemburg_norm(MomentSource::empirical(batch), 2.0, 1e-6);
    CHECK(r.value == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));
}

TEST_CASE("homogeneity of the scalar norms") {
    const std::vector<DistributionSpec> dists = {
        DistributionSpec{Weibull{1.0, 2.0}},
        DistributionSpec{Gaussian{0.0, 1.0}},
        DistributionSpec{Rademacher{1.0}},
        DistributionSpec{UniformSymmetric{1.0}},
    };
    const double tol = 1e-9;
    for (const auto& d : dists) {
        const double base = luxemburg_norm(MomentSource::analytic(d), 2.0, tol).value;
        const double base_m = moment_norm(MomentSource::analytic(d), 2.0, 100.0);
        for (double lam : {0.5, 2.0, 10.0}) {
            const auto ds = scaled(d, lam);
            CHECK(luxemburg_norm(MomentSource::analytic(ds), 2.0, tol).value ==
                  doctest::Approx(lam * base).epsilon(3e-6));
            CHECK(moment_norm(MomentSource::analytic(ds), 2.0, 100.0) ==
                  doctest::Approx(lam * base_m).epsilon(1e-8));
            if (d.is_centered()) {
                const double bt = tau_norm(MomentSource::analytic(d), 2.0, tol).value;
                CHECK(tau_norm(MomentSource::analytic(ds), 2.0, tol).value ==
                      doctest::Approx(lam * bt).epsilon(3e-6));
            }
        }
    }
}

TEST_CASE("moment_norm examples") {
    CHECK(moment_norm(analytic(PointMass{3.0}), 2.0, 50.0) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(moment_norm(analytic(Rademacher{1.0}), 2.0, 50.0) == doctest::Approx(1.0).epsilon(1e-9));
    // Dense-grid oracle for Weibull(1,p): sup alpha^{-1/p} Gamma(alpha/p+1)^{1/alpha}
    for (double p : {1.0, 2.0}) {
        double oracle = 0.0;
        for (double a = 1.0; a <= 200.0; a *= 1.0005) {
            const double v =
                std::pow(a, -1.0 / p) * std::exp(std::lgamma(a / p + 1.0) / a);
            oracle = std::max(oracle, v);
        }
        CHECK(moment_norm(analytic(Weibull{1.0, p}), p, 200.0) ==
              doctest::Approx(oracle).epsilon(1e-5));
    }
}

TEST_CASE("moment/luxemburg sandwich over the zoo") {
    const std::vector<DistributionSpec> dists = {
        DistributionSpec{Gaussian{0.0, 1.0}},  DistributionSpec{Rademacher{1.0}},
        DistributionSpec{UniformSymmetric{1.0}}, DistributionSpec{PointMass{2.0}},
        DistributionSpec{Weibull{1.0, 3.0}},
    };
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        for (const auto& d : dists) {
            const auto src = MomentSource::analytic(d);
            const double lux = luxemburg_norm(src, p, 1e-9).value;
            if (!std::isfinite(lux)) continue;
            const double mom = moment_norm(src, p, 200.0);
            const double ratio = mom / lux;
            CAPTURE(d.describe());
            CAPTURE(p);
            CHECK(ratio >= 0.1);
            CHECK(ratio <= 10.0);
        }
    }
}

TEST_CASE("varphi piecewise values") {
    for (double p : {1.5, 2.0, 3.0, 7.0}) CHECK(varphi(1.0, p) == doctest::Approx(0.5));
    for (double x : {-3.0, -0.4, 0.0, 0.7, 2.5})
        CHECK(varphi(x, 2.0) == doctest::Approx(0.5 * x * x));
    CHECK(varphi(2.0, 3.0) == doctest::Approx(17.0 / 6.0));
    CHECK(varphi(-2.0, 3.0) == doctest::Approx(17.0 / 6.0));  // even
    CHECK_THROWS_AS(varphi(1.0, 1.0), std::domain_error);
}

TEST_CASE("varphi is convex and C1 at the branch point") {
    for (double p : {1.5, 2.0, 3.0}) {
        const double h = 1e-6;
        const double left = (varphi(1.0, p) - varphi(1.0 - h, p)) / h;
        const double right = (varphi(1.0 + h, p) - varphi(1.0, p)) / h;
        CHECK(left == doctest::Approx(right).epsilon(1e-4));
        double prev_slope = -kInf;
        for (double x = -3.0; x < 3.0; x += 0.01) {
            const double slope = (varphi(x + 0.01, p) - varphi(x, p)) / 0.01;
            CHECK(slope >= prev_slope - 1e-12);
            prev_slope = slope;
        }
    }
}

TEST_CASE("young conjugate equals varphi_q") {
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
        const double q = p / (p - 1.0);
        std::vector<double> grid;
        for (int i = 0; i < 200; ++i) grid.push_back(-10.0 + 20.0 * i / 199.0);
        const auto conj = young_conjugate(p, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CAPTURE(p);
            CAPTURE(grid[i]);
            CHECK(std::abs(conj[i] - varphi(grid[i], q)) <= 1e-6);
        }
    }
    CHECK(young_conjugate(2.0, {1.0})[0] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(young_conjugate(3.0, {0.0})[0] == doctest::Approx(0.0));
}

TEST_CASE("tau norm closed cases") {
    CHECK(tau_norm(analytic(Gaussian{0.0, 1.0}), 2.0, 1e-9).value ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(tau_norm(analytic(Gaussian{0.0, 2.5}), 2.0, 1e-9).value ==
          doctest::Approx(2.5).epsilon(1e-6));
    CHECK(tau_norm(analytic(Rademacher{1.0}), 2.0, 1e-9).value ==
          doctest::Approx(1.0).epsilon(1e-5));
    CHECK_THROWS_AS(tau_norm(analytic(Gaussian{0.0, 1.0}), 1.0, 1e-9), std::domain_error);
    CHECK_THROWS_AS(tau_norm(analytic(Weibull{1.0, 2.0}), 2.0, 1e-9), std::invalid_argument);
}

TEST_CASE("tau/psi equivalence over centered zoo") {
    const std::vector<DistributionSpec> dists = {
        DistributionSpec{Gaussian{0.0, 1.0}},
        DistributionSpec{Rademacher{1.0}},
        DistributionSpec{UniformSymmetric{1.0}},
        DistributionSpec{SymmetrizedWeibull{1.0, 3.0}},
    };
    for (double p : {1.5, 2.0, 3.0}) {
        for (const auto& d : dists) {
            const auto src = MomentSource::analytic(d);
            const double lux = luxemburg_norm(src, p, 1e-9).value;
            if (!std::isfinite(lux)) continue;
            const double t = tau_norm(src, p, 1e-9).value;
            CAPTURE(d.describe());
            CAPTURE(p);
            CHECK(t / lux >= 0.1);
            CHECK(t / lux <= 10.0);
            // scale invariance of the ratio
            const auto ds = scaled(d, 3.0);
            const double t2 = tau_norm(MomentSource::analytic(ds), p, 1e-9).value;
            const double lux2 = luxemburg_norm(MomentSource::analytic(ds), p, 1e-9).value;
            CHECK(t2 / lux2 == doctest::Approx(t / lux).epsilon(1e-4));
        }
    }
}

TEST_CASE("empirical tau requires centering") {
    const auto batch = sample(DistributionSpec{Exponential{1.0}}, 10000, 5);
    CHECK_THROWS_AS(tau_norm(MomentSource::empirical(batch), 2.0, 1e-6),
                    std::invalid_argument);
}

TEST_CASE("characterization constants for a point mass sample") {
    SampleBatch b{std::vector<double>(1000, 2.0), 0, "pm"};
    for (double p : {1.0, 2.0}) {
        const auto cc = characterization_constants(b, p);
        const double exact = 2.0 / std::pow(ln2, 1.0 / p);
        CHECK(cc.K == doctest::Approx(exact).epsilon(1e-4));
        // L binds at t -> 2^- on the geometric grid; allow grid resolution
        CHECK(cc.L == doctest::Approx(exact).epsilon(0.03));
        CHECK(cc.L <= exact * (1.0 + 1e-12));
    }
}

TEST_CASE("characterization constants for large Weibull samples") {
    for (double p : {1.0, 2.0}) {
        const auto batch = sample(DistributionSpec{Weibull{1.0, p}}, 1000000, 17);
        const auto cc = characterization_constants(batch, p);
        CHECK(cc.K == doctest::Approx(std::exp2(1.0 / p)).epsilon(0.10));
        CHECK(cc.L == doctest::Approx(1.0).epsilon(0.10));
        CHECK(cc.M == doctest::Approx(1.0).epsilon(0.10));
    }
}
