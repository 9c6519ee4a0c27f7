#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "orlicz/vector_norms.hpp"

namespace orlicz {

// ---------------------------------------------------------------------------
// Dense order-d coefficient arrays and the chaos S_d(x) = sum a_{i1..id}
// x_{i1}...x_{id}, with the array p-norms, the d=2 operator norm, the Holder
// bound and the psi_1 bound for chaos in d-sub-exponential vectors.
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMaxChaosEntries = 10'000'000;

struct ChaosArray {
    int order = 2;  // d >= 2
    int dim = 1;    // n >= 1
    std::vector<double> coefficients;  // row-major, n^d entries

    ChaosArray(int d, int n) : order(d), dim(n) {
        if (d < 2) throw std::invalid_argument("ChaosArray: order must be >= 2");
        if (n < 1) throw std::invalid_argument("ChaosArray: dim must be >= 1");
        std::size_t count = 1;
        for (int k = 0; k < d; ++k) {
            count *= static_cast<std::size_t>(n);
            if (count > kMaxChaosEntries)
                throw std::invalid_argument("ChaosArray: n^d exceeds the dense-storage cap");
        }
        coefficients.assign(count, 0.0);
    }

    std::size_t entry_count() const { return coefficients.size(); }

    double& at(std::span<const int> idx) { return coefficients[flat(idx)]; }
    double at(std::span<const int> idx) const { return coefficients[flat(idx)]; }

    std::size_t flat(std::span<const int> idx) const {
        std::size_t f = 0;
        for (int k = 0; k < order; ++k) f = f * static_cast<std::size_t>(dim) +
                                            static_cast<std::size_t>(idx[k]);
        return f;
    }

    void validate() const {
        for (double c : coefficients)
            if (!std::isfinite(c)) throw std::invalid_argument("ChaosArray: non-finite entry");
    }

    static ChaosArray identity(int n) {
        ChaosArray a(2, n);
        for (int i = 0; i < n; ++i) a.coefficients[i * n + i] = 1.0;
        return a;
    }
};

// Full d-fold contraction by repeatedly folding the last index: d * n^d
// multiplies instead of the naive nested loops.
inline double evaluate(const ChaosArray& A, std::span<const double> x) {
    if (static_cast<int>(x.size()) != A.dim)
        throw std::invalid_argument("evaluate: vector length must equal array dim");
    const std::size_t n = static_cast<std::size_t>(A.dim);
    std::vector<double> cur(A.coefficients);
    std::size_t size = cur.size();
    for (int k = A.order; k >= 1; --k) {
        size /= n;
        for (std::size_t i = 0; i < size; ++i) {
            double acc = 0.0;
            const double* row = cur.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
            cur[i] = acc;
        }
    }
    return cur[0];
}

// Entrywise p-norm; p = inf gives the max absolute entry.
inline double array_norm(const ChaosArray& A, double p) {
    if (p == kInf) {
        double m = 0.0;
        for (double c : A.coefficients) m = std::max(m, std::abs(c));
        return m;
    }
    if (!(p >= 1.0)) throw std::domain_error("array_norm: p must be in [1, inf]");
    double acc = 0.0;
    for (double c : A.coefficients) acc += std::pow(std::abs(c), p);
    return std::pow(acc, 1.0 / p);
}

// Largest singular value of an order-2 array: power iteration on A^T A with a
// deterministic start vector.
inline double operator_norm(const ChaosArray& A, double tol = 1e-10) {
    if (A.order != 2) throw std::invalid_argument("operator_norm: order must be 2");
    const std::size_t n = static_cast<std::size_t>(A.dim);
    const auto& a = A.coefficients;
    std::vector<double> v(n), av(n), bv(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + static_cast<double>(i) / (n + 1.0);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    double lambda = 0.0;
    for (int iter = 0; iter < 100000; ++iter) {
        // bv = A^T (A v)
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += a[i * n + j] * v[j];
            av[i] = acc;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += a[i * n + j] * av[i];
            bv[j] = acc;
        }
        double next = 0.0;
        for (std::size_t j = 0; j < n; ++j) next += v[j] * bv[j];
        double bnorm = 0.0;
        for (double x : bv) bnorm += x * x;
        bnorm = std::sqrt(bnorm);
        if (bnorm == 0.0) return 0.0;
        for (std::size_t j = 0; j < n; ++j) v[j] = bv[j] / bnorm;
        if (std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(0.0, lambda));
}

struct HolderBoundReport {
    double bound = 0.0;
    double value = 0.0;
    bool holds = false;
};

// |S_d(x)| <= ||A||_{p/(p-1)} |x|_p^d.
inline HolderBoundReport holder_bound(const ChaosArray& A, std::span<const double> x, double p) {
    if (!(p > 1.0)) throw std::domain_error("holder_bound: p must be > 1");
    HolderBoundReport rep;
    rep.bound = array_norm(A, p / (p - 1.0)) * std::pow(lp_norm(x, p), A.order);
    rep.value = std::abs(evaluate(A, x));
    rep.holds = rep.value <= rep.bound * (1.0 + 1e-12) + 1e-300;
    return rep;
}

// ||S_d(xi)||_{psi_1} <= ||A||_{d/(d-1)} ||xi||_{E_d}^d.
inline double chaos_psi1_bound(const ChaosArray& A, const RandomVectorSource& xi, double tol,
                               const VectorNormOptions& opt = {}) {
    const int d = A.order;
    const NormResult ed = e_p_norm(xi, static_cast<double>(d), tol, opt);
    const double a_norm = array_norm(A, static_cast<double>(d) / (d - 1.0));
    if (a_norm == 0.0) return 0.0;
    if (ed.status != NormStatus::finite) return kInf;
    return a_norm * std::pow(ed.value, d);
}

// Centered version: ||S_d - E S_d||_{psi_1} <= 2 ||S_d||_{psi_1}.
inline double centered_chaos_psi1_bound(const ChaosArray& A, const RandomVectorSource& xi,
                                        double tol, const VectorNormOptions& opt = {}) {
    return 2.0 * chaos_psi1_bound(A, xi, tol, opt);
}

// ---------------------------------------------------------------------------
// Mean of S_d(xi): exact for independent products at d = 2, sample mean with
// standard error otherwise.
// ---------------------------------------------------------------------------
struct ChaosMean {
    double value = 0.0;
    double std_error = 0.0;  // 0 for the exact route
    bool exact = false;
};

inline ChaosMean chaos_mean(const ChaosArray& A, const RandomVectorSource& xi,
                            std::size_t samples = 100000, std::uint64_t seed = 99) {
    if (A.order == 2) {
        if (const auto* prod = std::get_if<IndependentProduct>(&xi.variant)) {
            const int n = A.dim;
            ChaosMean m;
            m.exact = true;
            std::vector<double> mu(n), m2(n);
            for (int i = 0; i < n; ++i) {
                mu[i] = mean(prod->coords[i]);
                m2[i] = moment_abs(prod->coords[i], 2.0);
            }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    m.value += A.coefficients[static_cast<std::size_t>(i) * n + j] *
                               (i == j ? m2[i] : mu[i] * mu[j]);
            return m;
        }
    }
    ChaosMean m;
    Rng rng(seed);
    std::vector<double> row(A.dim);
    double acc = 0.0, acc2 = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        draw_row(xi, rng, row);
        const double v = evaluate(A, row);
        acc += v;
        acc2 += v * v;
    }
    const double ns = static_cast<double>(samples);
    m.value = acc / ns;
    m.std_error = std::sqrt(std::max(0.0, acc2 / ns - m.value * m.value) / ns);
    return m;
}

}  // namespace orlicz
