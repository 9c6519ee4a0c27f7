#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/chaos.hpp"
#include "orlicz/distributions.hpp"
#include "orlicz/tail_bounds.hpp"
#include "orlicz/vector_norms.hpp"

namespace orlicz::io {

using nlohmann::json;

// Full-precision decimal rendering for CSV output.
inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline void require_fields(const json& j, std::initializer_list<const char*> fields) {
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const char* f : fields)
            if (key == f) known = true;
        if (!known) throw std::invalid_argument("unknown field '" + key + "'");
    }
    for (const char* f : fields)
        if (!j.contains(f)) throw std::invalid_argument(std::string("missing field '") + f + "'");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Distribution specs: {"kind": "weibull", "lambda": 1.0, "shape": 2.0} etc.
// ---------------------------------------------------------------------------
inline json to_json(const DistributionSpec& d) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Gaussian>)
                return {{"kind", "gaussian"}, {"mean", v.mean}, {"sigma", v.sigma}};
            else if constexpr (std::is_same_v<T, Weibull>)
                return {{"kind", "weibull"}, {"lambda", v.lambda}, {"shape", v.shape}};
            else if constexpr (std::is_same_v<T, SymmetrizedWeibull>)
                return {{"kind", "symmetrized_weibull"}, {"lambda", v.lambda}, {"shape", v.shape}};
            else if constexpr (std::is_same_v<T, Rademacher>)
                return {{"kind", "rademacher"}, {"scale", v.scale}};
            else if constexpr (std::is_same_v<T, UniformSymmetric>)
                return {{"kind", "uniform_symmetric"}, {"half_width", v.half_width}};
            else if constexpr (std::is_same_v<T, PointMass>)
                return {{"kind", "point_mass"}, {"c", v.c}};
            else
                return {{"kind", "exponential"}, {"rate", v.rate}};
        },
        d.kind);
}

inline DistributionSpec distribution_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("distribution: expected an object with a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "gaussian") {
        detail::require_fields(j, {"kind", "mean", "sigma"});
        return DistributionSpec{Gaussian{j.at("mean").get<double>(), j.at("sigma").get<double>()}};
    }
    if (kind == "weibull") {
        detail::require_fields(j, {"kind", "lambda", "shape"});
        return DistributionSpec{Weibull{j.at("lambda").get<double>(), j.at("shape").get<double>()}};
    }
    if (kind == "symmetrized_weibull") {
        detail::require_fields(j, {"kind", "lambda", "shape"});
        return DistributionSpec{
            SymmetrizedWeibull{j.at("lambda").get<double>(), j.at("shape").get<double>()}};
    }
    if (kind == "rademacher") {
        detail::require_fields(j, {"kind", "scale"});
        return DistributionSpec{Rademacher{j.at("scale").get<double>()}};
    }
    if (kind == "uniform_symmetric") {
        detail::require_fields(j, {"kind", "half_width"});
        return DistributionSpec{UniformSymmetric{j.at("half_width").get<double>()}};
    }
    if (kind == "point_mass") {
        detail::require_fields(j, {"kind", "c"});
        return DistributionSpec{PointMass{j.at("c").get<double>()}};
    }
    if (kind == "exponential") {
        detail::require_fields(j, {"kind", "rate"});
        return DistributionSpec{Exponential{j.at("rate").get<double>()}};
    }
    throw std::invalid_argument("distribution: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Matrix CSV: N rows x n columns, no header.
// ---------------------------------------------------------------------------
inline std::vector<std::vector<double>> read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw std::runtime_error("malformed matrix CSV cell '" + cell + "' in " + path);
            }
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("empty matrix CSV: " + path);
    return rows;
}

inline void write_matrix_csv(const std::string& path, const std::vector<std::vector<double>>& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    for (const auto& row : m) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << fmt17(row[i]);
        out << "\n";
    }
}

// ---------------------------------------------------------------------------
// Vector sources: {"kind": "independent_product", "coords": [...]},
// {"kind": "linear_mix", "matrix": [[...]], "base": {...}},
// {"kind": "empirical", "path": "matrix.csv"}.
// ---------------------------------------------------------------------------
inline json to_json(const RandomVectorSource& src) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, IndependentProduct>) {
                json coords = json::array();
                for (const auto& c : v.coords) coords.push_back(to_json(c));
                return {{"kind", "independent_product"}, {"coords", coords}};
            } else if constexpr (std::is_same_v<T, LinearMix>) {
                json coords = json::array();
                for (const auto& c : v.base.coords) coords.push_back(to_json(c));
                return {{"kind", "linear_mix"},
                        {"matrix", v.matrix},
                        {"base", {{"kind", "independent_product"}, {"coords", coords}}}};
            } else {
                return {{"kind", "empirical"}, {"rows", v.rows}, {"seed", v.seed}};
            }
        },
        src.variant);
}

inline IndependentProduct independent_product_from_json(const json& j) {
    detail::require_fields(j, {"kind", "coords"});
    if (j.at("kind").get<std::string>() != "independent_product")
        throw std::invalid_argument("expected kind 'independent_product'");
    IndependentProduct p;
    for (const auto& c : j.at("coords")) p.coords.push_back(distribution_from_json(c));
    return p;
}

inline RandomVectorSource vector_source_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("vector source: expected an object with a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "independent_product") return RandomVectorSource{independent_product_from_json(j)};
    if (kind == "linear_mix") {
        detail::require_fields(j, {"kind", "matrix", "base"});
        LinearMix m;
        m.base = independent_product_from_json(j.at("base"));
        m.matrix = j.at("matrix").get<std::vector<std::vector<double>>>();
        return RandomVectorSource{std::move(m)};
    }
    if (kind == "empirical") {
        EmpiricalMatrix e;
        if (j.contains("path")) {
            detail::require_fields(j, {"kind", "path"});
            e.rows = read_matrix_csv(j.at("path").get<std::string>());
        } else {
            if (j.contains("seed")) {
                detail::require_fields(j, {"kind", "rows", "seed"});
                e.seed = j.at("seed").get<std::uint64_t>();
            } else {
                detail::require_fields(j, {"kind", "rows"});
            }
            e.rows = j.at("rows").get<std::vector<std::vector<double>>>();
        }
        return RandomVectorSource{std::move(e)};
    }
    throw std::invalid_argument("vector source: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// ChaosArray CSV: header line "order,dim", a values line, then n^d
// coefficients in row-major order, one per line.
// ---------------------------------------------------------------------------
inline void write_chaos_csv(const std::string& path, const ChaosArray& a) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << "order,dim\n" << a.order << "," << a.dim << "\n";
    for (double c : a.coefficients) out << fmt17(c) << "\n";
}

inline ChaosArray read_chaos_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open chaos array file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "order,dim")
        throw std::runtime_error("chaos CSV: expected header 'order,dim' in " + path);
    if (!std::getline(in, line)) throw std::runtime_error("chaos CSV: missing order/dim line");
    int order = 0, dim = 0;
    if (std::sscanf(line.c_str(), "%d,%d", &order, &dim) != 2)
        throw std::runtime_error("chaos CSV: malformed order/dim line '" + line + "'");
    ChaosArray a(order, dim);
    for (std::size_t i = 0; i < a.entry_count(); ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("chaos CSV: expected " + std::to_string(a.entry_count()) +
                                     " coefficients");
        a.coefficients[i] = std::stod(line);
    }
    a.validate();
    return a;
}

// ---------------------------------------------------------------------------
// TailCurve CSV: columns t, bound, label.
// ---------------------------------------------------------------------------
inline void write_tail_curve_csv(const std::string& path, const TailCurve& c) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << "t,bound,label\n";
    for (std::size_t i = 0; i < c.t.size(); ++i)
        out << fmt17(c.t[i]) << "," << fmt17(c.value[i]) << "," << c.label << "\n";
}

inline void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace orlicz::io
