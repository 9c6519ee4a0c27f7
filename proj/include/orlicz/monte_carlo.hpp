#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "orlicz/distributions.hpp"
#include "orlicz/scalar_norms.hpp"
#include "orlicz/tail_bounds.hpp"

namespace orlicz {

// ---------------------------------------------------------------------------
// Seeded Monte Carlo verification: empirical tails with exact-binomial upper
// confidence limits, domination checks against theoretical curves, the
// approximate rotation invariance check, and calibration of the constant C.
// ---------------------------------------------------------------------------

struct McConfig {
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    std::vector<double> t_grid;
    int workers = 1;
};

inline constexpr std::int64_t kMcBlockSize = 65536;

// Deterministic block-partitioned sampling: block k is seeded by
// hash(master seed, k), so the output is identical for any worker count.
template <class Sampler>
std::vector<double> sample_values(std::int64_t total, std::uint64_t seed, int workers,
                                  Sampler&& fn) {
    if (total < 1) throw std::invalid_argument("sample_values: total must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(total));
    const std::int64_t blocks = (total + kMcBlockSize - 1) / kMcBlockSize;
    auto run_block = [&](std::int64_t k) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
        const std::int64_t begin = k * kMcBlockSize;
        const std::int64_t end = std::min(total, begin + kMcBlockSize);
        for (std::int64_t i = begin; i < end; ++i) out[static_cast<std::size_t>(i)] = fn(rng);
    };
    workers = std::max(1, workers);
    if (workers == 1 || blocks == 1) {
        for (std::int64_t k = 0; k < blocks; ++k) run_block(k);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::int64_t k = w; k < blocks; k += workers) run_block(k);
            });
        for (auto& t : pool) t.join();
    }
    return out;
}

struct EmpiricalTailCurve {
    TailCurve freq;                 // fraction of |value| >= t per grid point
    std::vector<double> upper99;    // exact-binomial 99% upper confidence limit
    std::int64_t samples = 0;
};

inline EmpiricalTailCurve empirical_tail(std::span<const double> values,
                                         const std::vector<double>& t_grid) {
    if (values.empty()) throw std::invalid_argument("empirical_tail: no values");
    std::vector<double> sorted;
    sorted.reserve(values.size());
    for (double v : values) sorted.push_back(std::abs(v));
    std::sort(sorted.begin(), sorted.end());
    EmpiricalTailCurve out;
    out.samples = static_cast<std::int64_t>(values.size());
    out.freq.t = t_grid;
    out.freq.label = "empirical";
    const double n = static_cast<double>(values.size());
    for (double t : t_grid) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
        const std::int64_t k = static_cast<std::int64_t>(sorted.end() - it);
        out.freq.value.push_back(static_cast<double>(k) / n);
        out.upper99.push_back(binomial_upper_limit(k, out.samples, 0.99));
    }
    return out;
}

struct TailVerifyReport {
    bool verdict = false;
    double worst_ratio = 0.0;         // max over resolvable points of UCL / bound
    std::size_t checked_points = 0;
    std::vector<std::size_t> excluded;  // unresolvable at this sample size
};

// Per-point check of the 99% upper confidence limit against the bound curve.
// Points where the bound is below 4/samples cannot be certified by Monte
// Carlo at this sample size and are excluded and reported.
inline TailVerifyReport verify_tail_bound(const EmpiricalTailCurve& empirical,
                                          const TailCurve& bound) {
    if (empirical.freq.t.size() != bound.t.size())
        throw std::invalid_argument("verify_tail_bound: t-grid size mismatch");
    for (std::size_t i = 0; i < bound.t.size(); ++i)
        if (std::abs(empirical.freq.t[i] - bound.t[i]) >
            1e-12 * std::max(1.0, std::abs(bound.t[i])))
            throw std::invalid_argument("verify_tail_bound: t-grids differ");
    TailVerifyReport rep;
    rep.verdict = true;
    const double resolution = 4.0 / static_cast<double>(empirical.samples);
    for (std::size_t i = 0; i < bound.t.size(); ++i) {
        if (bound.value[i] < resolution) {
            rep.excluded.push_back(i);
            continue;
        }
        ++rep.checked_points;
        const double ratio = empirical.upper99[i] / bound.value[i];
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        if (ratio > 1.0) rep.verdict = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Approximate rotation invariance: tau^r(sum t_i xi_i) <= sum tau^r(t_i xi_i)
// with r = min{2, q}, for centered independent coordinates and p > 1.
// ---------------------------------------------------------------------------
struct RotationInvarianceReport {
    double lhs = 0.0;  // tau of the weighted sum
    double rhs = 0.0;  // (sum tau^r(t_i xi_i))^{1/r}
    double r = 2.0;
    bool verdict = false;
};

inline RotationInvarianceReport rotation_invariance_check(
    const std::vector<DistributionSpec>& coords, const std::vector<double>& weights, double p,
    double tol) {
    if (!(p > 1.0))
        throw std::domain_error("rotation_invariance_check: p must be > 1 (tau undefined at 1)");
    if (coords.size() != weights.size() || coords.empty())
        throw std::invalid_argument("rotation_invariance_check: coords/weights mismatch");
    for (const auto& c : coords)
        if (!c.is_centered())
            throw std::invalid_argument("rotation_invariance_check: coordinates must be centered");
    const double q = p / (p - 1.0);
    RotationInvarianceReport rep;
    rep.r = std::min(2.0, q);
    // Independent sum: log MGF adds coordinate-wise.
    auto lm = [&](double s) {
        double acc = 0.0;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            const double l = log_mgf(coords[i], weights[i] * s);
            if (l == kInf) return kInf;
            acc += l;
        }
        return acc;
    };
    rep.lhs = detail::tau_from_log_mgf(lm, p, tol).value;
    double acc = 0.0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (weights[i] == 0.0) continue;
        const double tau_i =
            std::abs(weights[i]) * tau_norm(MomentSource::analytic(coords[i]), p, tol).value;
        acc += std::pow(tau_i, rep.r);
    }
    rep.rhs = std::pow(acc, 1.0 / rep.r);
    rep.verdict = rep.lhs <= rep.rhs * (1.0 + 5.0 * tol);
    return rep;
}

// ---------------------------------------------------------------------------
// Calibration of the constant C: smallest grid value 2^{k/4}, k = -8..16,
// whose Bernstein bound dominates every case's empirical 99% upper tail.
// ---------------------------------------------------------------------------
struct CalibrationCase {
    std::string label;
    DistributionSpec dist;
    bool subtract_mean = false;  // center a non-centered law by its exact mean
};

inline std::vector<CalibrationCase> default_calibration_cases() {
    return {
        {"symmetrized_weibull_1_1", DistributionSpec{SymmetrizedWeibull{1.0, 1.0}}, false},
        {"centered_exponential_1", DistributionSpec{Exponential{1.0}}, true},
        {"standard_gaussian", DistributionSpec{Gaussian{0.0, 1.0}}, false},
    };
}

struct CalibrationCaseReport {
    std::string label;
    double psi1 = 0.0;
    double min_feasible_C = kInf;
};

struct CalibrationResult {
    double C = 0.0;
    std::vector<CalibrationCaseReport> cases;
};

inline CalibrationResult calibrate_C(const std::vector<CalibrationCase>& cases,
                                     std::int64_t samples, std::uint64_t seed, int workers = 1,
                                     int grid_points = 41) {
    if (cases.empty()) throw std::invalid_argument("calibrate_C: no cases");
    CalibrationResult result;
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const auto& cs = cases[ci];
        const double shift = cs.subtract_mean ? mean(cs.dist) : 0.0;
        if (!cs.subtract_mean && !cs.dist.is_centered())
            throw std::invalid_argument("calibrate_C: case '" + cs.label + "' is not centered");
        auto values = sample_values(samples, mix_seed(seed, ci), workers,
                                    [&](Rng& rng) { return rng.draw(cs.dist) - shift; });
        SampleBatch batch{values, seed, cs.label};
        const double psi1 =
            luxemburg_norm(MomentSource::empirical(batch), 1.0, kDefaultEmpiricalTol).value;

        // Grid up to the threshold where the empirical tail is still >= 10/samples.
        std::vector<double> abs_sorted(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) abs_sorted[i] = std::abs(values[i]);
        std::sort(abs_sorted.begin(), abs_sorted.end());
        const std::size_t cut = abs_sorted.size() >= 11 ? abs_sorted.size() - 11 : 0;
        const double t_max = abs_sorted[cut];
        std::vector<double> t_grid(grid_points);
        for (int i = 0; i < grid_points; ++i) t_grid[i] = t_max * i / (grid_points - 1);
        const EmpiricalTailCurve emp = empirical_tail(values, t_grid);

        CalibrationCaseReport rep;
        rep.label = cs.label;
        rep.psi1 = psi1;
        for (int k = -8; k <= 16; ++k) {
            const double C = std::exp2(k / 4.0);
            const TailCurve bound =
                bernstein_tail_curve(t_grid, subexp_params(psi1, C), cs.label);
            if (verify_tail_bound(emp, bound).verdict) {
                rep.min_feasible_C = C;
                break;
            }
        }
        if (rep.min_feasible_C == kInf)
            throw std::runtime_error("calibrate_C: no C in the grid dominates case '" + cs.label +
                                     "'");
        result.cases.push_back(rep);
        result.C = std::max(result.C, rep.min_feasible_C);
    }
    return result;
}

}  // namespace orlicz
