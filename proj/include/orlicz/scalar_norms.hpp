#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orlicz/distributions.hpp"
#include "orlicz/numerics.hpp"

namespace orlicz {

// ---------------------------------------------------------------------------
// Scalar exponential-Orlicz machinery: Luxemburg psi_p norm, the moment-based
// equivalent norm, the quadratic-near-zero standardization of |x|^p with its
// Young conjugate, the tau norm driven by MGF domination, and the empirical
// characterization constants (K, L, M).
// ---------------------------------------------------------------------------

inline constexpr double kDefaultAnalyticTol = 1e-9;
inline constexpr double kDefaultEmpiricalTol = 1e-6;
inline constexpr double kNormProbeCap = 1e12;

struct MomentSource {
    std::variant<DistributionSpec, SampleBatch> source;

    static MomentSource analytic(DistributionSpec d) { return {std::move(d)}; }
    static MomentSource empirical(SampleBatch b) {
        b.validate();
        return {std::move(b)};
    }

    bool is_analytic() const { return std::holds_alternative<DistributionSpec>(source); }
    const DistributionSpec& dist() const { return std::get<DistributionSpec>(source); }
    const SampleBatch& batch() const { return std::get<SampleBatch>(source); }
};

enum class NormStatus { finite, infinite, iteration_cap };

struct NormResult {
    double value = 0.0;
    NormStatus status = NormStatus::finite;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    long evaluations = 0;
    std::string caveat;
};

inline const char* to_string(NormStatus s) {
    switch (s) {
        case NormStatus::finite: return "finite";
        case NormStatus::infinite: return "infinite";
        default: return "iteration_cap";
    }
}

// ---------------------------------------------------------------------------
// exp_moment: E exp(|xi/K|^p), extended-real.
// ---------------------------------------------------------------------------
namespace detail {

inline bool exp_moment_diverges(const DistributionSpec& dist, double K, double p) {
    return std::visit(
        [&](const auto& d) -> bool {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Gaussian>)
                return p > 2.0 || (p == 2.0 && K * K <= 2.0 * d.sigma * d.sigma);
            else if constexpr (std::is_same_v<T, Weibull> || std::is_same_v<T, SymmetrizedWeibull>)
                return p > d.shape || (p == d.shape && K <= d.lambda);
            else if constexpr (std::is_same_v<T, Exponential>)
                return p > 1.0 || (p == 1.0 && K <= 1.0 / d.rate);
            else
                return false;  // bounded support
        },
        dist.kind);
}

inline double exp_moment_analytic(const DistributionSpec& dist, double K, double p) {
    if (exp_moment_diverges(dist, K, p)) return kInf;
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                return std::exp(std::pow(std::abs(d.c) / K, p));
            } else if constexpr (std::is_same_v<T, Rademacher>) {
                return std::exp(std::pow(d.scale / K, p));
            } else if constexpr (std::is_same_v<T, Gaussian>) {
                if (p == 2.0) {
                    // E exp(aX^2), a = 1/K^2: (1-2a s^2)^{-1/2} exp(a m^2/(1-2a s^2))
                    const double s2 = d.sigma * d.sigma;
                    const double denom = 1.0 - 2.0 * s2 / (K * K);
                    return std::exp(d.mean * d.mean / (K * K * denom)) / std::sqrt(denom);
                }
                // p < 2: quadrature; integrand peaks near (p s^2 / K^p)^(1/(2-p))
                const double peak =
                    std::pow(p * d.sigma * d.sigma / std::pow(K, p), 1.0 / (2.0 - p));
                auto integrand = [&](double x) {
                    return std::exp(std::pow(x / K, p)) * orlicz::detail::pdf_abs(dist.kind, x);
                };
                return integrate_tail(integrand, 0.0, std::max(d.sigma, peak));
            } else if constexpr (std::is_same_v<T, Weibull> ||
                                 std::is_same_v<T, SymmetrizedWeibull>) {
                if (p == d.shape) return 1.0 / (1.0 - std::pow(d.lambda / K, p));
                // p < shape
                const double peak =
                    d.lambda * std::pow(p * std::pow(d.lambda / K, p) / d.shape,
                                        1.0 / (d.shape - p));
                auto integrand = [&](double x) {
                    return std::exp(std::pow(x / K, p)) *
                           orlicz::detail::weibull_pdf(x, d.lambda, d.shape);
                };
                return integrate_tail(integrand, 0.0, std::max(d.lambda, peak));
            } else if constexpr (std::is_same_v<T, UniformSymmetric>) {
                auto integrand = [&](double x) {
                    return std::exp(std::pow(x / K, p)) / d.half_width;
                };
                return adaptive_simpson(integrand, 0.0, d.half_width, 1e-13);
            } else {  // Exponential, p == 1 (p > 1 diverges)
                return d.rate / (d.rate - 1.0 / K);
            }
        },
        dist.kind);
}

}  // namespace detail

inline double exp_moment(const MomentSource& src, double K, double p) {
    if (!(K > 0.0)) throw std::invalid_argument("exp_moment: K must be > 0");
    if (!(p >= 1.0)) throw std::invalid_argument("exp_moment: p must be >= 1");
    if (src.is_analytic()) return detail::exp_moment_analytic(src.dist(), K, p);
    double acc = 0.0;
    for (double v : src.batch().values) acc += std::exp(std::pow(std::abs(v) / K, p));
    return acc / static_cast<double>(src.batch().values.size());
}

// ---------------------------------------------------------------------------
// Luxemburg norm by bisection on the monotone map K -> E exp(|xi/K|^p).
// ---------------------------------------------------------------------------

// Generic driver; em must be non-increasing in K with values in [1, inf].
template <class EM>
NormResult luxemburg_from_exp_moment(EM&& em, double tol, double probe_cap = kNormProbeCap) {
    if (!(tol > 0.0)) throw std::invalid_argument("luxemburg_norm: tol must be > 0");
    NormResult r;
    auto feasible = [&](double K) {
        ++r.evaluations;
        return em(K) <= 2.0;
    };
    double hi = 1.0;
    while (!feasible(hi)) {
        hi *= 2.0;
        if (hi > probe_cap) {
            r.value = kInf;
            r.status = NormStatus::infinite;
            r.bracket_lo = probe_cap;
            r.bracket_hi = kInf;
            return r;
        }
    }
    double lo = hi / 2.0;
    while (feasible(lo)) {
        hi = lo;
        lo /= 2.0;
        if (lo < 1e-300) {  // degenerate: constraint holds for every K
            r.value = 0.0;
            r.bracket_lo = 0.0;
            r.bracket_hi = 0.0;
            return r;
        }
    }
    int iters = 0;
    while (hi - lo > tol) {
        if (++iters > 200) {
            r.status = NormStatus::iteration_cap;
            break;
        }
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    r.value = hi;  // feasible endpoint: constraint holds at the reported value
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    return r;
}

inline NormResult luxemburg_norm(const MomentSource& src, double p, double tol) {
    if (src.is_analytic())
        return luxemburg_from_exp_moment(
            [&](double K) { return detail::exp_moment_analytic(src.dist(), K, p); }, tol);
    // Empirical: precompute |x|^p once, probes vary only K.
    const auto& vals = src.batch().values;
    std::vector<double> pw(vals.size());
    double vmax = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        pw[i] = std::pow(std::abs(vals[i]), p);
        vmax = std::max(vmax, std::abs(vals[i]));
    }
    if (vmax == 0.0) return NormResult{0.0, NormStatus::finite, 0.0, 0.0, 0, {}};
    auto em = [&](double K) {
        const double kp = std::pow(K, p);
        double acc = 0.0;
        for (double y : pw) acc += std::exp(y / kp);
        return acc / static_cast<double>(pw.size());
    };
    return luxemburg_from_exp_moment(em, tol);
}

// ---------------------------------------------------------------------------
// Moment-based equivalent norm: sup_{alpha >= 1} alpha^{-1/p} (E|xi|^alpha)^{1/alpha}.
// ---------------------------------------------------------------------------
inline double moment_norm(const MomentSource& src, double p, double alpha_max) {
    if (!(alpha_max >= 1.0)) throw std::invalid_argument("moment_norm: alpha_max must be >= 1");
    double a_hi = alpha_max;
    std::vector<double> abs_vals;
    double vmax = 0.0;
    if (!src.is_analytic()) {
        const auto& vals = src.batch().values;
        abs_vals.reserve(vals.size());
        for (double v : vals) {
            abs_vals.push_back(std::abs(v));
            vmax = std::max(vmax, std::abs(v));
        }
        // Above ln(N) the empirical alpha-moment degenerates to max|x_i|.
        a_hi = std::min(a_hi, std::max(1.0, std::log(static_cast<double>(vals.size()))));
        if (vmax == 0.0) return 0.0;
    }
    auto objective = [&](double alpha) {
        double root;  // (E|xi|^alpha)^{1/alpha}
        if (src.is_analytic()) {
            root = std::exp(log_moment_abs(src.dist(), alpha) / alpha);
        } else {
            double acc = 0.0;
            for (double v : abs_vals) acc += std::pow(v / vmax, alpha);
            root = vmax * std::pow(acc / static_cast<double>(abs_vals.size()), 1.0 / alpha);
        }
        return std::pow(alpha, -1.0 / p) * root;
    };
    if (a_hi <= 1.0) return objective(1.0);
    const int grid_n = 160;
    const double la = 0.0, lb = std::log(a_hi);
    double best = -kInf;
    int best_i = 0;
    std::vector<double> lgrid(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        lgrid[i] = la + (lb - la) * i / (grid_n - 1);
        const double v = objective(std::exp(lgrid[i]));
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double lo = lgrid[std::max(0, best_i - 1)];
    const double hi = lgrid[std::min(grid_n - 1, best_i + 1)];
    auto [lx, fv] = golden_max([&](double l) { return objective(std::exp(l)); }, lo, hi, 1e-10);
    (void)lx;
    return std::max(best, fv);
}

// ---------------------------------------------------------------------------
// varphi_p: x^2/2 for |x| <= 1, |x|^p/p - 1/p + 1/2 beyond; C^1 at |x| = 1.
// ---------------------------------------------------------------------------
inline double varphi(double x, double p) {
    if (!(p > 1.0)) throw std::domain_error("varphi: p must be > 1");
    const double a = std::abs(x);
    if (a <= 1.0) return 0.5 * a * a;
    return std::pow(a, p) / p - 1.0 / p + 0.5;
}

// Numeric Young transform of varphi_p on a grid of y values; comparable
// pointwise to varphi(y, q) with q = p/(p-1).
inline std::vector<double> young_conjugate(double p, const std::vector<double>& y_grid) {
    if (!(p > 1.0)) throw std::domain_error("young_conjugate: p must be > 1");
    std::vector<double> out;
    out.reserve(y_grid.size());
    for (double y : y_grid) {
        const double a = std::abs(y);
        if (a == 0.0) {
            out.push_back(0.0);
            continue;
        }
        // sup_x (a x - varphi(x, p)); the maximizer solves varphi'(x) = a.
        const double x_star = a <= 1.0 ? a : std::pow(a, 1.0 / (p - 1.0));
        const double hi = std::max(2.0, 2.0 * x_star);
        auto inner = [&](double x) { return a * x - varphi(x, p); };
        auto [xm, fm] = golden_max(inner, 0.0, hi, 1e-11 * hi);
        (void)xm;
        out.push_back(fm);
    }
    return out;
}

// ---------------------------------------------------------------------------
// tau norm: inf{K > 0 : E exp(tX) <= exp varphi_q(K t) for all t}.
// ---------------------------------------------------------------------------
namespace detail {

// sup over t of log_mgf(t) - varphi(K t, q); geometric two-sided grid around
// the 1/K scale plus golden refinement at the grid argmax.
template <class LM>
double tau_slack(LM& lm, double K, double q) {
    const double t_scale = 1.0 / std::max(K, 1e-12);
    const int per_decade = 16;
    const double lo_dec = -6.0, hi_dec = 6.0;
    const int npts = static_cast<int>((hi_dec - lo_dec) * per_decade) + 1;
    double best = -kInf;
    for (int sign = -1; sign <= 1; sign += 2) {
        double best_l = lo_dec;
        double loc_best = -kInf;
        for (int i = 0; i < npts; ++i) {
            const double l = lo_dec + (hi_dec - lo_dec) * i / (npts - 1);
            const double t = sign * t_scale * std::pow(10.0, l);
            const double s = lm(t) - varphi(K * t, q);
            if (s > loc_best) {
                loc_best = s;
                best_l = l;
            }
            if (s == kInf) break;
        }
        if (loc_best < kInf) {
            const double step = (hi_dec - lo_dec) / (npts - 1);
            auto f = [&](double l) {
                const double t = sign * t_scale * std::pow(10.0, l);
                return lm(t) - varphi(K * t, q);
            };
            auto [lx, fv] = golden_max(f, best_l - step, best_l + step, 1e-10);
            (void)lx;
            loc_best = std::max(loc_best, fv);
        }
        best = std::max(best, loc_best);
    }
    return best;
}

// Absolute noise floor for the slack sup: evaluation of log-MGF minus the
// conjugate near a tie point carries rounding noise, so exact <= 0 would make
// feasibility flicker and break monotone bisection.
inline constexpr double kTauSlackTol = 1e-12;

template <class LM>
NormResult tau_from_log_mgf(LM&& lm, double p, double tol) {
    const double q = p / (p - 1.0);
    auto feasible_slack = [&](double K) { return tau_slack(lm, K, q) <= kTauSlackTol; };
    NormResult r;
    auto feasible = [&](double K) {
        ++r.evaluations;
        return feasible_slack(K);
    };
    double hi = 1.0;
    while (!feasible(hi)) {
        hi *= 2.0;
        if (hi > kNormProbeCap) {
            r.value = kInf;
            r.status = NormStatus::infinite;
            r.bracket_lo = kNormProbeCap;
            r.bracket_hi = kInf;
            return r;
        }
    }
    double lo = hi / 2.0;
    while (feasible(lo)) {
        hi = lo;
        lo /= 2.0;
        if (lo < 1e-300) {
            r.value = 0.0;
            return r;
        }
    }
    int iters = 0;
    while (hi - lo > tol) {
        if (++iters > 200) {
            r.status = NormStatus::iteration_cap;
            break;
        }
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    r.value = hi;
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    return r;
}

}  // namespace detail

inline NormResult tau_norm(const MomentSource& src, double p, double tol) {
    if (p == 1.0)
        throw std::domain_error(
            "tau_norm: unsupported at p = 1 (sub-exponential MGFs exist only near zero)");
    if (!(p > 1.0)) throw std::domain_error("tau_norm: p must be > 1");
    if (src.is_analytic()) {
        if (!src.dist().is_centered())
            throw std::invalid_argument("tau_norm: source must be centered");
        return detail::tau_from_log_mgf(
            [&](double t) { return log_mgf(src.dist(), t); }, p, tol);
    }
    const auto& vals = src.batch().values;
    const double n = static_cast<double>(vals.size());
    double m = 0.0, s2 = 0.0;
    for (double v : vals) m += v;
    m /= n;
    for (double v : vals) s2 += (v - m) * (v - m);
    const double se = std::sqrt(s2 / (n - 1.0)) / std::sqrt(n);
    if (std::abs(m) > 3.0 * se && std::abs(m) > 1e-12)
        throw std::invalid_argument("tau_norm: empirical source is not centered (mean beyond 3 SE)");
    // Empirical MGF with a trust region: skip t where the relative standard
    // error of mean exp(t x) exceeds 10%; result is then a lower-bound caveat.
    bool capped = false;
    auto lm = [&](double t) -> double {
        double shift = -kInf;
        for (double v : vals) shift = std::max(shift, t * v);
        double acc = 0.0, acc2 = 0.0;
        for (double v : vals) {
            const double w = std::exp(t * v - shift);
            acc += w;
            acc2 += w * w;
        }
        const double mw = acc / n;
        const double sw = std::sqrt(std::max(0.0, acc2 / n - mw * mw));
        if (sw / (std::sqrt(n) * mw) > 0.1) {
            capped = true;
            return -kInf;  // outside the trust region: treat the constraint as met
        }
        return shift + std::log(mw);
    };
    NormResult r = detail::tau_from_log_mgf(lm, p, tol);
    if (capped)
        r.caveat = "empirical MGF trust region capped |t|; value is a lower bound";
    return r;
}

// ---------------------------------------------------------------------------
// Empirical characterization constants K, L, M.
// ---------------------------------------------------------------------------
struct CharacterizationConstants {
    double K = 0.0;
    double L = 0.0;
    double M = 0.0;
    double p = 1.0;
};

inline CharacterizationConstants characterization_constants(const SampleBatch& sample, double p,
                                                            int t_points = 512,
                                                            int alpha_points = 64) {
    sample.validate();
    const double n = static_cast<double>(sample.values.size());
    CharacterizationConstants cc;
    cc.p = p;

    const MomentSource src = MomentSource::empirical(sample);
    const NormResult lux = luxemburg_norm(src, p, kDefaultEmpiricalTol);
    cc.K = lux.value;
    const double khat = std::isfinite(lux.value) && lux.value > 0.0 ? lux.value : 1.0;

    std::vector<double> sorted;
    sorted.reserve(sample.values.size());
    for (double v : sample.values) sorted.push_back(std::abs(v));
    std::sort(sorted.begin(), sorted.end());

    // L: minimal L with empirical P(|xi| >= t) <= 2 exp(-(t/L)^p) on the grid.
    const double t_lo = 1e-3 * khat, t_hi = 20.0 * khat;
    for (int i = 0; i < t_points; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (t_points - 1));
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
        const double frac = static_cast<double>(sorted.end() - it) / n;
        if (frac <= 0.0) continue;
        cc.L = std::max(cc.L, t / std::pow(std::log(2.0 / frac), 1.0 / p));
    }

    // M: minimal M with empirical E|xi|^alpha <= 2 M^alpha Gamma(alpha/p + 1).
    const double a_hi = std::max(1.0 + 1e-9, std::log(n));
    const double vmax = sorted.back();
    for (int i = 0; i < alpha_points; ++i) {
        const double alpha = std::pow(a_hi, static_cast<double>(i) / (alpha_points - 1));
        double acc = 0.0;
        for (double v : sorted) acc += std::pow(v / vmax, alpha);
        const double log_moment = alpha * std::log(vmax) + std::log(acc / n);
        const double log_m =
            (log_moment - std::log(2.0) - std::lgamma(alpha / p + 1.0)) / alpha;
        cc.M = std::max(cc.M, std::exp(log_m));
    }
    return cc;
}

}  // namespace orlicz
