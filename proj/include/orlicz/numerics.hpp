#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace detail {

template <class F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm)) return kInf;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with an absolute tolerance. Returns +inf if the integrand
// overflows anywhere it is sampled.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double eps_abs, int max_depth = 16) {
    if (!(b > a)) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm)) return kInf;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole,
                                        std::max(eps_abs, 1e-300), max_depth);
}

// Integral of f over [start, inf) for integrands with super-polynomial decay.
// Panels of geometrically growing width; stops once several consecutive panels
// contribute below rel_tol of the accumulated value. scale should be of the
// order of the integrand's characteristic width (a peak location hint works).
template <class F>
double integrate_tail(F&& f, double start, double scale, double rel_tol = 1e-13,
                      int max_panels = 300) {
    if (!(scale > 0.0) || !std::isfinite(scale)) scale = 1.0;
    double total = 0.0;
    double a = start;
    double w = scale;
    int quiet = 0;
    for (int k = 0; k < max_panels; ++k) {
        const double b = a + w;
        const double mid = f(0.5 * (a + b));
        if (!std::isfinite(mid)) return kInf;
        const double rough = std::abs(mid) * w;
        const double eps = rel_tol * std::max({std::abs(total), rough, 1e-300});
        const double piece = adaptive_simpson(f, a, b, eps);
        if (!std::isfinite(piece) || !std::isfinite(total + piece)) return kInf;
        total += piece;
        if (std::abs(piece) <= rel_tol * std::max(std::abs(total), 1e-300)) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
        a = b;
        if (k >= 1) w *= 2.0;
        if (a > 1e300) break;
    }
    return total;
}

// Golden-section maximizer on [a, b] for a unimodal objective. Returns (x, f(x)).
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol_x,
                                     int max_iter = 200) {
    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < max_iter && (b - a) > tol_x; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// splitmix64 step; also used as the seed-combining hash for worker blocks.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a;
    std::uint64_t x = splitmix64(s);
    s = x ^ (b + 0x9e3779b97f4a7c15ULL);
    return splitmix64(s);
}

namespace detail {

// Continued fraction for the regularized incomplete beta function (Lentz).
inline double betacf(double a, double b, double x) {
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    const double tiny = 1e-300;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * detail::betacf(a, b, x) / a;
    return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

// Clopper-Pearson upper confidence limit for a binomial proportion:
// the p solving P(Bin(n, p) <= k) = 1 - confidence.
inline double binomial_upper_limit(std::int64_t k, std::int64_t n, double confidence = 0.99) {
    if (k < 0 || n <= 0 || k > n) throw std::invalid_argument("binomial_upper_limit: bad k/n");
    if (k == n) return 1.0;
    // p_u solves I_p(k+1, n-k) = confidence; I_p is increasing in p.
    const double a = static_cast<double>(k) + 1.0;
    const double b = static_cast<double>(n - k);
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (reg_inc_beta(a, b, mid) < confidence ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace orlicz
