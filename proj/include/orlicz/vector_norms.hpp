#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "orlicz/scalar_norms.hpp"

namespace orlicz {

// ---------------------------------------------------------------------------
// Random vector sources and the three vector norms: the coordinate maximum,
// the q-sphere supremum norm, and the E_p norm, plus the chain and the
// independent-coordinate bound machinery.
// ---------------------------------------------------------------------------

struct IndependentProduct {
    std::vector<DistributionSpec> coords;
};

struct LinearMix {
    IndependentProduct base;                  // m independent coordinates
    std::vector<std::vector<double>> matrix;  // n rows x m columns
};

struct EmpiricalMatrix {
    std::vector<std::vector<double>> rows;  // N samples x n coordinates
    std::uint64_t seed = 0;
};

struct RandomVectorSource {
    std::variant<IndependentProduct, LinearMix, EmpiricalMatrix> variant;

    RandomVectorSource(IndependentProduct p) : variant(std::move(p)) { validate(); }
    RandomVectorSource(LinearMix m) : variant(std::move(m)) { validate(); }
    RandomVectorSource(EmpiricalMatrix e) : variant(std::move(e)) { validate(); }

    int dim() const {
        return std::visit(
            [](const auto& v) -> int {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, IndependentProduct>)
                    return static_cast<int>(v.coords.size());
                else if constexpr (std::is_same_v<T, LinearMix>)
                    return static_cast<int>(v.matrix.size());
                else
                    return v.rows.empty() ? 0 : static_cast<int>(v.rows.front().size());
            },
            variant);
    }

    void validate() const {
        if (dim() < 1) throw std::invalid_argument("RandomVectorSource: dimension must be >= 1");
        if (const auto* m = std::get_if<LinearMix>(&variant)) {
            const std::size_t cols = m->base.coords.size();
            if (cols == 0) throw std::invalid_argument("LinearMix: empty base");
            for (const auto& row : m->matrix)
                if (row.size() != cols)
                    throw std::invalid_argument("LinearMix: matrix column count mismatch");
        }
        if (const auto* e = std::get_if<EmpiricalMatrix>(&variant)) {
            if (e->rows.empty()) throw std::invalid_argument("EmpiricalMatrix: no rows");
            const std::size_t n = e->rows.front().size();
            for (const auto& row : e->rows) {
                if (row.size() != n)
                    throw std::invalid_argument("EmpiricalMatrix: ragged rows");
                for (double v : row)
                    if (!std::isfinite(v))
                        throw std::invalid_argument("EmpiricalMatrix: non-finite entry");
            }
        }
    }
};

// Row-major N x n sample matrix.
struct SampleMatrix {
    std::vector<double> data;
    std::size_t rows = 0, cols = 0;
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Draw one realization into out (length dim); used by both the matrix builder
// and the streaming Monte Carlo paths.
inline void draw_row(const RandomVectorSource& src, Rng& rng, std::span<double> out) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, IndependentProduct>) {
                for (std::size_t j = 0; j < v.coords.size(); ++j) out[j] = rng.draw(v.coords[j]);
            } else if constexpr (std::is_same_v<T, LinearMix>) {
                const std::size_t m = v.base.coords.size();
                std::vector<double> eta(m);
                for (std::size_t j = 0; j < m; ++j) eta[j] = rng.draw(v.base.coords[j]);
                for (std::size_t i = 0; i < v.matrix.size(); ++i) {
                    double acc = 0.0;
                    for (std::size_t j = 0; j < m; ++j) acc += v.matrix[i][j] * eta[j];
                    out[i] = acc;
                }
            } else {  // EmpiricalMatrix: resample rows with replacement
                const std::size_t idx = static_cast<std::size_t>(
                    rng.uniform01() * static_cast<double>(v.rows.size()));
                const auto& row = v.rows[std::min(idx, v.rows.size() - 1)];
                std::copy(row.begin(), row.end(), out.begin());
            }
        },
        src.variant);
}

inline SampleMatrix sample_matrix(const RandomVectorSource& src, std::size_t n_samples,
                                  std::uint64_t seed) {
    SampleMatrix m;
    m.cols = static_cast<std::size_t>(src.dim());
    if (const auto* e = std::get_if<EmpiricalMatrix>(&src.variant)) {
        // Stored sample is used as-is: it already is the empirical measure.
        m.rows = e->rows.size();
        m.data.reserve(m.rows * m.cols);
        for (const auto& row : e->rows) m.data.insert(m.data.end(), row.begin(), row.end());
        return m;
    }
    m.rows = n_samples;
    m.data.resize(m.rows * m.cols);
    Rng rng(seed);
    for (std::size_t r = 0; r < m.rows; ++r)
        draw_row(src, rng, std::span<double>(m.data.data() + r * m.cols, m.cols));
    return m;
}

// ---------------------------------------------------------------------------
// lq geometry helpers (q may be +inf).
// ---------------------------------------------------------------------------
inline double lp_norm(std::span<const double> x, double q) {
    if (q == kInf) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (double v : x) acc += std::pow(std::abs(v), q);
    return std::pow(acc, 1.0 / q);
}

inline void normalize_q(std::vector<double>& x, double q) {
    const double n = lp_norm(x, q);
    if (n > 0.0)
        for (double& v : x) v /= n;
}

// ---------------------------------------------------------------------------
// Derivative-free multi-start projected ascent on the q-sphere.
// ---------------------------------------------------------------------------
struct SphereOptions {
    int restarts = -1;  // -1: default 8 + n random starts
    int max_rounds = 40;
    double init_step = 0.5;
    double min_step = 1e-4;
    std::uint64_t seed = 2024;
};

struct SphereMaxResult {
    double value = -kInf;
    std::vector<double> direction;
    long evaluations = 0;
};

template <class Obj>
SphereMaxResult maximize_on_q_sphere(Obj&& f, int n, double q, const SphereOptions& opt = {}) {
    SphereMaxResult best;
    auto eval = [&](const std::vector<double>& t) {
        ++best.evaluations;
        return f(t);
    };
    auto consider = [&](std::vector<double> t) {
        normalize_q(t, q);
        const double v = eval(t);
        if (v > best.value) {
            best.value = v;
            best.direction = t;
        }
        return std::make_pair(std::move(t), v);
    };

    std::vector<std::vector<double>> starts;
    for (int i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        starts.push_back(e);
        e[i] = -1.0;
        starts.push_back(e);
    }
    starts.push_back(std::vector<double>(n, 1.0));
    if (q == kInf && n <= 12) {
        // Extreme points of the inf-ball are the sign vectors.
        for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
            std::vector<double> t(n);
            for (int i = 0; i < n; ++i) t[i] = (mask >> i) & 1 ? -1.0 : 1.0;
            starts.push_back(std::move(t));
        }
    }
    const int restarts = opt.restarts >= 0 ? opt.restarts : 8 + n;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(mix_seed(opt.seed, static_cast<std::uint64_t>(r)));
        std::vector<double> t(n);
        for (int i = 0; i < n; ++i) t[i] = rng.gaussian();
        starts.push_back(std::move(t));
    }

    for (auto& start : starts) {
        auto [t, v] = consider(start);
        double step = opt.init_step;
        for (int round = 0; round < opt.max_rounds && step >= opt.min_step; ++round) {
            bool improved = false;
            for (int i = 0; i < n; ++i) {
                for (double s : {step, -step}) {
                    std::vector<double> cand = t;
                    cand[i] += s;
                    normalize_q(cand, q);
                    const double cv = eval(cand);
                    if (cv > v) {
                        v = cv;
                        t = std::move(cand);
                        improved = true;
                        if (v > best.value) {
                            best.value = v;
                            best.direction = t;
                        }
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Analytic projection <xi, t>: available when every (base) coordinate is
// Gaussian or a point mass, so the projection stays in the zoo.
// ---------------------------------------------------------------------------
namespace detail {

inline bool gaussian_or_pointmass(const DistributionSpec& d) {
    return std::holds_alternative<Gaussian>(d.kind) || std::holds_alternative<PointMass>(d.kind);
}

inline DistributionSpec project_gaussian_family(const std::vector<DistributionSpec>& coords,
                                                std::span<const double> w) {
    double mu = 0.0, var = 0.0;
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (const auto* g = std::get_if<Gaussian>(&coords[j].kind)) {
            mu += w[j] * g->mean;
            var += w[j] * w[j] * g->sigma * g->sigma;
        } else {
            mu += w[j] * std::get<PointMass>(coords[j].kind).c;
        }
    }
    if (var > 0.0) return DistributionSpec{Gaussian{mu, std::sqrt(var)}};
    return DistributionSpec{PointMass{mu}};
}

}  // namespace detail

inline bool analytically_projectable(const RandomVectorSource& src) {
    if (const auto* p = std::get_if<IndependentProduct>(&src.variant))
        return std::all_of(p->coords.begin(), p->coords.end(), detail::gaussian_or_pointmass);
    if (const auto* m = std::get_if<LinearMix>(&src.variant))
        return std::all_of(m->base.coords.begin(), m->base.coords.end(),
                           detail::gaussian_or_pointmass);
    return false;
}

inline std::optional<DistributionSpec> analytic_projection(const RandomVectorSource& src,
                                                           std::span<const double> t) {
    if (!analytically_projectable(src)) return std::nullopt;
    if (const auto* p = std::get_if<IndependentProduct>(&src.variant))
        return detail::project_gaussian_family(p->coords, t);
    const auto& m = std::get<LinearMix>(src.variant);
    std::vector<double> w(m.base.coords.size(), 0.0);
    for (std::size_t i = 0; i < m.matrix.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) w[j] += t[i] * m.matrix[i][j];
    return detail::project_gaussian_family(m.base.coords, w);
}

// ---------------------------------------------------------------------------
// The three norms.
// ---------------------------------------------------------------------------
struct VectorNormOptions {
    std::size_t sample_size = 20000;  // shared batch for non-analytic sources
    std::uint64_t seed = 7071;
    SphereOptions sphere;
};

namespace detail {

inline NormResult empirical_luxemburg_from_values(std::span<const double> vals, double p,
                                                  double tol) {
    std::vector<double> pw(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) pw[i] = std::pow(std::abs(vals[i]), p);
    auto em = [&](double K) {
        const double kp = std::pow(K, p);
        double acc = 0.0;
        for (double y : pw) acc += std::exp(y / kp);
        return acc / static_cast<double>(pw.size());
    };
    return luxemburg_from_exp_moment(em, tol);
}

}  // namespace detail

inline double max_coordinate_norm(const RandomVectorSource& src, double p, double tol,
                                  const VectorNormOptions& opt = {}) {
    const int n = src.dim();
    if (const auto* prod = std::get_if<IndependentProduct>(&src.variant)) {
        double best = 0.0;
        for (const auto& c : prod->coords)
            best = std::max(best, luxemburg_norm(MomentSource::analytic(c), p, tol).value);
        return best;
    }
    if (analytically_projectable(src)) {
        double best = 0.0;
        for (int i = 0; i < n; ++i) {
            std::vector<double> e(n, 0.0);
            e[i] = 1.0;
            best = std::max(
                best, luxemburg_norm(MomentSource::analytic(*analytic_projection(src, e)), p, tol)
                          .value);
        }
        return best;
    }
    const SampleMatrix m = sample_matrix(src, opt.sample_size, opt.seed);
    double best = 0.0;
    std::vector<double> col(m.rows);
    for (std::size_t c = 0; c < m.cols; ++c) {
        for (std::size_t r = 0; r < m.rows; ++r) col[r] = m(r, c);
        best = std::max(best, detail::empirical_luxemburg_from_values(col, p, tol).value);
    }
    return best;
}

struct PsiVectorResult {
    double value = 0.0;
    std::vector<double> direction;
};

inline PsiVectorResult psi_vector_norm(const RandomVectorSource& src, double p, double tol,
                                       const VectorNormOptions& opt = {}) {
    const int n = src.dim();
    const double q = p == 1.0 ? kInf : p / (p - 1.0);
    SphereMaxResult sm;
    if (analytically_projectable(src)) {
        sm = maximize_on_q_sphere(
            [&](const std::vector<double>& t) {
                return luxemburg_norm(MomentSource::analytic(*analytic_projection(src, t)), p, tol)
                    .value;
            },
            n, q, opt.sphere);
    } else {
        const SampleMatrix m = sample_matrix(src, opt.sample_size, opt.seed);
        std::vector<double> proj(m.rows);
        sm = maximize_on_q_sphere(
            [&](const std::vector<double>& t) {
                for (std::size_t r = 0; r < m.rows; ++r) {
                    double acc = 0.0;
                    for (std::size_t c = 0; c < m.cols; ++c) acc += m(r, c) * t[c];
                    proj[r] = acc;
                }
                return detail::empirical_luxemburg_from_values(proj, p, tol).value;
            },
            n, q, opt.sphere);
    }
    return {sm.value, std::move(sm.direction)};
}

inline NormResult e_p_norm(const RandomVectorSource& src, double p, double tol,
                           const VectorNormOptions& opt = {}) {
    if (const auto* prod = std::get_if<IndependentProduct>(&src.variant)) {
        // Analytic factorization over independent coordinates.
        auto em = [&](double K) {
            double acc = 1.0;
            for (const auto& c : prod->coords) {
                const double f = detail::exp_moment_analytic(c, K, p);
                if (f == kInf) return kInf;
                acc *= f;
                if (acc == kInf) return kInf;
            }
            return acc;
        };
        return luxemburg_from_exp_moment(em, tol);
    }
    const SampleMatrix m = sample_matrix(src, opt.sample_size, opt.seed);
    std::vector<double> row_pow(m.rows, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < m.cols; ++c) acc += std::pow(std::abs(m(r, c)), p);
        row_pow[r] = acc;
    }
    auto em = [&](double K) {
        const double kp = std::pow(K, p);
        double acc = 0.0;
        for (double y : row_pow) acc += std::exp(y / kp);
        return acc / static_cast<double>(row_pow.size());
    };
    return luxemburg_from_exp_moment(em, tol);
}

// ---------------------------------------------------------------------------
// chain_check: max coordinate norm <= psi vector norm <= E_p <= n^{1/p} max.
// All quantities come from one consistent source (fully analytic for
// Gaussian/point-mass products, otherwise one shared sample batch), so the
// chain verdict is not at the mercy of mismatched sampling noise.
// ---------------------------------------------------------------------------
struct NormChainReport {
    double max_coord = 0.0;
    double psi_vec = 0.0;
    double e_p = 0.0;
    double upper = 0.0;
    bool chain_holds = false;
    std::vector<double> argmax_direction;
};

inline NormChainReport chain_check(const RandomVectorSource& src, double p, double tol,
                                   const VectorNormOptions& opt = {}) {
    const int n = src.dim();
    const bool analytic_mode =
        std::holds_alternative<IndependentProduct>(src.variant) && analytically_projectable(src);
    NormChainReport rep;
    if (analytic_mode) {
        rep.max_coord = max_coordinate_norm(src, p, tol, opt);
        auto psi = psi_vector_norm(src, p, tol, opt);
        rep.psi_vec = psi.value;
        rep.argmax_direction = std::move(psi.direction);
        rep.e_p = e_p_norm(src, p, tol, opt).value;
    } else {
        const SampleMatrix m = sample_matrix(src, opt.sample_size, opt.seed);
        std::vector<double> col(m.rows);
        for (std::size_t c = 0; c < m.cols; ++c) {
            for (std::size_t r = 0; r < m.rows; ++r) col[r] = m(r, c);
            rep.max_coord =
                std::max(rep.max_coord, detail::empirical_luxemburg_from_values(col, p, tol).value);
        }
        const double q = p == 1.0 ? kInf : p / (p - 1.0);
        std::vector<double> proj(m.rows);
        auto sm = maximize_on_q_sphere(
            [&](const std::vector<double>& t) {
                for (std::size_t r = 0; r < m.rows; ++r) {
                    double acc = 0.0;
                    for (std::size_t c = 0; c < m.cols; ++c) acc += m(r, c) * t[c];
                    proj[r] = acc;
                }
                return detail::empirical_luxemburg_from_values(proj, p, tol).value;
            },
            n, q, opt.sphere);
        rep.psi_vec = sm.value;
        rep.argmax_direction = std::move(sm.direction);
        std::vector<double> row_pow(m.rows, 0.0);
        for (std::size_t r = 0; r < m.rows; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < m.cols; ++c) acc += std::pow(std::abs(m(r, c)), p);
            row_pow[r] = acc;
        }
        auto em = [&](double K) {
            const double kp = std::pow(K, p);
            double acc = 0.0;
            for (double y : row_pow) acc += std::exp(y / kp);
            return acc / static_cast<double>(row_pow.size());
        };
        rep.e_p = luxemburg_from_exp_moment(em, tol).value;
    }
    rep.upper = std::pow(static_cast<double>(n), 1.0 / p) * rep.max_coord;
    const double eps = 10.0 * tol;
    rep.chain_holds = rep.max_coord <= rep.psi_vec + eps && rep.psi_vec <= rep.e_p + eps &&
                      rep.e_p <= rep.upper + eps;
    return rep;
}

// sup over the q-sphere of the r-norm: n^{1/r - 1/q} for r <= q.
inline double holder_sup_identity(int n, double q, double r) {
    if (n < 1) throw std::invalid_argument("holder_sup_identity: n must be >= 1");
    if (!(r >= 1.0 && q >= r)) throw std::domain_error("holder_sup_identity: need 1 <= r <= q");
    return std::pow(static_cast<double>(n), 1.0 / r - 1.0 / q);
}

// ---------------------------------------------------------------------------
// Measured tau/psi equivalence constant over centered zoo members: the
// smallest c with c^{-1} psi <= tau <= c psi on the probed family.
// ---------------------------------------------------------------------------
inline double measured_c_p(double p, double tol = kDefaultAnalyticTol) {
    const std::vector<DistributionSpec> zoo = {
        DistributionSpec{Gaussian{0.0, 1.0}},
        DistributionSpec{Rademacher{1.0}},
        DistributionSpec{UniformSymmetric{1.0}},
        DistributionSpec{SymmetrizedWeibull{1.0, std::max(p, 1.0)}},
    };
    double c = 1.0;
    for (const auto& d : zoo) {
        const auto src = MomentSource::analytic(d);
        const double psi = luxemburg_norm(src, p, tol).value;
        if (!std::isfinite(psi) || psi <= 0.0) continue;  // outside the psi_p space
        const double t = tau_norm(src, p, tol).value;
        if (!std::isfinite(t) || t <= 0.0) continue;
        c = std::max({c, t / psi, psi / t});
    }
    return c;
}

struct IndependentBoundReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double c_p = 0.0;
    double dimension_factor = 1.0;
    bool holds = false;
};

inline IndependentBoundReport independent_bound_check(const IndependentProduct& prod, double p,
                                                      double c_p, double tol,
                                                      const VectorNormOptions& opt = {}) {
    if (!(p > 1.0)) throw std::domain_error("independent_bound_check: p must be > 1");
    for (const auto& c : prod.coords)
        if (!c.is_centered())
            throw std::invalid_argument("independent_bound_check: coordinates must be centered");
    const RandomVectorSource src{prod};
    const int n = src.dim();
    const double q = p / (p - 1.0);
    const double r = std::min(q, 2.0);
    IndependentBoundReport rep;
    rep.c_p = c_p;
    rep.dimension_factor = holder_sup_identity(n, q, r);
    rep.lhs = psi_vector_norm(src, p, tol, opt).value;
    rep.rhs = rep.dimension_factor * c_p * c_p * max_coordinate_norm(src, p, tol, opt);
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 10.0 * tol);
    return rep;
}

}  // namespace orlicz
