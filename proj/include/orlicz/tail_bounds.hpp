#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz/numerics.hpp"

namespace orlicz {

// ---------------------------------------------------------------------------
// Closed-form two-regime tail bounds: the piecewise exponent g with its knee
// at a^2 b, the weaker min form, the sub-exponential (a, b) parametrization,
// the chaos tail bound and the Hanson-Wright form for quadratic forms.
// ---------------------------------------------------------------------------

struct BernsteinParams {
    double a = 1.0;
    double b = 1.0;

    BernsteinParams(double a_, double b_) : a(a_), b(b_) {
        if (!(a > 0.0) || !(b > 0.0))
            throw std::invalid_argument("BernsteinParams: a and b must be > 0");
    }
};

struct TailCurve {
    std::vector<double> t;
    std::vector<double> value;
    std::string label;
};

// g(s) = s^2/(2a^2) up to the knee a^2 b, then b s - a^2 b^2 / 2.
inline double g_piecewise(double s, const BernsteinParams& params) {
    if (!(s >= 0.0)) throw std::invalid_argument("g_piecewise: s must be >= 0");
    const double knee = params.a * params.a * params.b;
    if (s <= knee) return s * s / (2.0 * params.a * params.a);
    return params.b * s - 0.5 * params.a * params.a * params.b * params.b;
}

// min{t^2/(2a^2), b t / 2}; everywhere <= g_piecewise.
inline double bernstein_min_form(double t, const BernsteinParams& params) {
    if (!(t >= 0.0)) throw std::invalid_argument("bernstein_min_form: t must be >= 0");
    return std::min(t * t / (2.0 * params.a * params.a), 0.5 * params.b * t);
}

// (a, b) for a centered sub-exponential variable with the given psi_1 norm:
// a = sqrt(2) C ||eta||_{psi_1}, b = 1/(C ||eta||_{psi_1}); a b = sqrt(2).
inline BernsteinParams subexp_params(double psi1_norm, double C) {
    if (!(psi1_norm > 0.0) || !(C > 0.0))
        throw std::invalid_argument("subexp_params: inputs must be > 0");
    return BernsteinParams(std::sqrt(2.0) * C * psi1_norm, 1.0 / (C * psi1_norm));
}

// Chaos tail bound 2 exp(-g(t)) with quadratic exponent
// t^2 / (16 C^2 ||A||_{d'}^2 ||xi||_{E_d}^{2d}) below the knee
// 4 C ||A||_{d'} ||xi||_{E_d}^d and linear exponent t/(2C ||A||_{d'} ||xi||^d) - 1
// beyond; both branches give exponent 1 at the knee.
inline double chaos_tail_bound(double t, double a_norm_dprime, double e_d_norm, int d, double C) {
    if (!(t >= 0.0)) throw std::invalid_argument("chaos_tail_bound: t must be >= 0");
    if (!(a_norm_dprime > 0.0) || !(e_d_norm > 0.0) || !(C > 0.0) || d < 2)
        throw std::invalid_argument("chaos_tail_bound: bad parameters");
    const double scale = C * a_norm_dprime * std::pow(e_d_norm, d);
    const double knee = 4.0 * scale;
    double g;
    if (t <= knee)
        g = t * t / (16.0 * scale * scale);
    else
        g = t / (2.0 * scale) - 1.0;
    return 2.0 * std::exp(-g);
}

// Hanson-Wright form for quadratic forms, with the operator norm of A and
// K = ||xi||_{E_2}: 2 exp(-min{t^2/(16 C^2 ||A||^2 K^4), t/(4 C ||A|| K^2)}).
inline double hanson_wright_bound(double t, double op_norm, double K, double C) {
    if (!(t >= 0.0)) throw std::invalid_argument("hanson_wright_bound: t must be >= 0");
    if (!(op_norm > 0.0) || !(K > 0.0) || !(C > 0.0))
        throw std::invalid_argument("hanson_wright_bound: bad parameters");
    const double s = C * op_norm * K * K;
    const double g = std::min(t * t / (16.0 * s * s), t / (4.0 * s));
    return 2.0 * std::exp(-g);
}

// Evaluate 2 exp(-g(t)) on a grid.
inline TailCurve bernstein_tail_curve(const std::vector<double>& t_grid,
                                      const BernsteinParams& params, std::string label) {
    TailCurve c;
    c.t = t_grid;
    c.label = std::move(label);
    c.value.reserve(t_grid.size());
    for (double t : t_grid) c.value.push_back(2.0 * std::exp(-g_piecewise(t, params)));
    return c;
}

}  // namespace orlicz
