#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqkit/algebraic.hpp"
#include "eqkit/canonical.hpp"
#include "eqkit/generators.hpp"
#include "eqkit/graph.hpp"
#include "eqkit/linalg.hpp"
#include "eqkit/spectral_order.hpp"

namespace eqkit {

inline constexpr double kUnitNormTol = 1e-9;
inline constexpr double kInnerProductTol = 1e-8;
inline constexpr std::size_t kOracleCap = 8;

/// N unit vectors in R^d with pairwise inner products +-alpha.
struct LineConfig {
    std::size_t d = 0;
    double alpha = 0.0;
    std::vector<std::vector<double>> vectors;

    std::size_t size() const { return vectors.size(); }
};

/// lambda I - A_G + J/2 and the unit-diagonal (1 - alpha) I + alpha (J - 2 A_G),
/// which differ by the factor 2 alpha. PSD and rank are decided on the scaled
/// form; the unit form is judged against the same threshold times 2 alpha.
struct GramReport {
    Graph graph;
    SymMatrix scaled;
    SymMatrix unit;
    bool is_psd = false;
    std::size_t rank = 0;
    double tolerance = 0.0;        // relative tolerance requested
    double threshold = 0.0;        // absolute threshold applied to the scaled form
    double scaled_min_eigenvalue = 0.0;
    double unit_min_eigenvalue = 0.0;
    bool unit_is_psd = false;
    std::size_t unit_rank = 0;
};

inline SymMatrix scaled_gram(const Graph& g, double lambda) {
    const std::size_t n = g.order();
    SymMatrix m(n, 0.5);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, lambda + 0.5);
    for (auto [u, v] : g.edges()) m.set(u, v, -0.5);
    return m;
}

inline SymMatrix unit_gram(const Graph& g, double alpha) {
    const std::size_t n = g.order();
    SymMatrix m(n, alpha);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1.0);
    for (auto [u, v] : g.edges()) m.set(u, v, -alpha);
    return m;
}

inline GramReport gram_from_graph(const Graph& g, const Angle& angle, double tol = kDefaultRankTol) {
    GramReport r;
    r.graph = g;
    r.tolerance = tol;
    r.scaled = scaled_gram(g, angle.lambda());
    r.unit = unit_gram(g, angle.value());
    r.threshold = tol * psd_scale(r.scaled);
    if (g.order() == 0) {
        r.is_psd = r.unit_is_psd = true;
        return r;
    }
    const auto sv = eigenvalues(r.scaled);
    const auto uv = eigenvalues(r.unit);
    const double unit_threshold = 2.0 * angle.value() * r.threshold;
    r.scaled_min_eigenvalue = sv.back();
    r.unit_min_eigenvalue = uv.back();
    r.is_psd = sv.back() >= -r.threshold;
    r.unit_is_psd = uv.back() >= -unit_threshold;
    r.rank = static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [&](double x) { return x > r.threshold; }));
    r.unit_rank = static_cast<std::size_t>(std::count_if(uv.begin(), uv.end(), [&](double x) { return x > unit_threshold; }));
    return r;
}

/// Unit vectors realising G: edges at inner product -alpha, non-edges at +alpha,
/// in dimension equal to the numerical rank.
inline LineConfig lines_from_graph(const Graph& g, const Angle& angle, double tol = kDefaultRankTol) {
    GramReport r = gram_from_graph(g, angle, tol);
    if (!r.is_psd)
        throw std::domain_error("graph is incompatible with alpha = " + angle.exact().to_string() + ": lambda I - A + J/2 has eigenvalue " +
                                std::to_string(r.scaled_min_eigenvalue));
    LineConfig c;
    c.alpha = angle.value();
    c.vectors = psd_factor_absolute(r.unit, 2.0 * angle.value() * r.threshold);
    c.d = c.vectors.empty() ? 0 : c.vectors.front().size();
    return c;
}

/// floor((d-1)/(k-1)) copies of H plus (d-1) - (k-1) floor((d-1)/(k-1)) isolated vertices.
inline Graph lower_bound_graph(const Graph& h, std::size_t d) {
    const std::size_t k = h.order();
    if (k < 2) throw std::invalid_argument("lower_bound_graph: H needs at least 2 vertices");
    if (d < k) throw std::invalid_argument("lower_bound_graph: need d >= k");
    const std::size_t copies = (d - 1) / (k - 1);
    return repeated_union(h, copies, (d - 1) - (k - 1) * copies);
}

/// floor(k(d-1)/(k-1)) = (d-1) + floor((d-1)/(k-1)).
inline std::size_t lower_bound_count(std::size_t k, std::size_t d) { return (d - 1) + (d - 1) / (k - 1); }

/// The extremal construction: lines from the lower-bound graph of a k-vertex H
/// with lambda_1(H) = lambda exactly, embedded in R^d.
inline LineConfig construct_lower_bound(const Graph& h, std::size_t k, std::size_t d, const Angle& angle, double tol = kDefaultRankTol) {
    if (h.order() != k) throw std::invalid_argument("construct_lower_bound: H must have k vertices");
    if (d < k) throw std::invalid_argument("construct_lower_bound: need d >= k");
    const AlgebraicNumber lambda = lambda_from_alpha(angle);
    if (!exact_radius_eq(h, lambda)) throw std::invalid_argument("construct_lower_bound: lambda_1(H) != " + lambda.to_string());
    const Graph g = lower_bound_graph(h, d);
    if (g.order() != lower_bound_count(k, d)) throw std::logic_error("construct_lower_bound: vertex count mismatch");
    LineConfig c = lines_from_graph(g, angle, tol);
    if (c.d > d) throw std::logic_error("construct_lower_bound: rank " + std::to_string(c.d) + " exceeds d");
    for (auto& v : c.vectors) v.resize(d, 0.0);
    c.d = d;
    return c;
}

/// Largest construction available from a k(lambda) search: the lower-bound
/// family when a witness exists, else d orthogonal-ish lines from the empty graph.
inline LineConfig construct_best(const Angle& angle, std::size_t d, std::size_t kmax = kDefaultKmax, unsigned jobs = 1, double tol = kDefaultRankTol) {
    KOrderResult ko = k_order(lambda_from_alpha(angle), kmax, jobs);
    if (ko.found() && d >= *ko.k) return construct_lower_bound(*ko.witness, *ko.k, d, angle, tol);
    LineConfig c = lines_from_graph(empty_graph(d), angle, tol);
    for (auto& v : c.vectors) v.resize(d, 0.0);
    c.d = d;
    return c;
}

struct ValidationReport {
    bool valid = false;
    std::size_t count = 0;
    std::size_t effective_dim = 0;
    double max_norm_deviation = 0.0;
    double max_inner_product_deviation = 0.0;
    double norm_tolerance = kUnitNormTol;
    double inner_product_tolerance = kInnerProductTol;
    Graph associated;
    std::vector<std::string> violations;
};

inline ValidationReport validate(const LineConfig& config, const Angle& angle, double norm_tol = kUnitNormTol, double ip_tol = kInnerProductTol) {
    ValidationReport r;
    r.count = config.size();
    r.norm_tolerance = norm_tol;
    r.inner_product_tolerance = ip_tol;
    r.associated = Graph(config.size());
    const double alpha = angle.value();
    for (std::size_t i = 0; i < config.size(); ++i) {
        if (config.vectors[i].size() != config.d) {
            r.violations.push_back("vector " + std::to_string(i) + " has length " + std::to_string(config.vectors[i].size()) + ", expected d = " + std::to_string(config.d));
            continue;
        }
        double sq = 0.0;
        for (double x : config.vectors[i]) sq += x * x;
        const double dev = std::abs(std::sqrt(sq) - 1.0);
        r.max_norm_deviation = std::max(r.max_norm_deviation, dev);
        if (dev > norm_tol) r.violations.push_back("norm of vector " + std::to_string(i) + " deviates from 1 by " + std::to_string(dev));
    }
    if (!r.violations.empty()) return r;
    for (std::size_t i = 0; i < config.size(); ++i) {
        for (std::size_t j = i + 1; j < config.size(); ++j) {
            double ip = 0.0;
            for (std::size_t k = 0; k < config.d; ++k) ip += config.vectors[i][k] * config.vectors[j][k];
            const double dev = std::abs(std::abs(ip) - alpha);
            r.max_inner_product_deviation = std::max(r.max_inner_product_deviation, dev);
            if (dev > ip_tol)
                r.violations.push_back("|<v" + std::to_string(i) + ", v" + std::to_string(j) + ">| deviates from alpha by " + std::to_string(dev));
            if (ip < 0) r.associated.add_edge(i, j);
        }
    }
    r.effective_dim = numerical_rank(config.vectors);
    if (r.effective_dim > config.d) r.violations.push_back("effective dimension exceeds d");
    r.valid = r.violations.empty();
    return r;
}

struct NAlphaResult {
    std::size_t value = 0;
    char regime = 'a';  // 'a': floor(k(d-1)/(k-1)); 'b': lower bound d
    std::string caveat;
};

inline NAlphaResult n_alpha_formula(const Angle& angle, std::size_t d, const KOrderResult& korder) {
    (void)angle;
    if (d < 2) throw std::invalid_argument("n_alpha_formula: need d >= 2");
    NAlphaResult r;
    if (korder.found()) {
        r.value = lower_bound_count(*korder.k, d);
        r.regime = 'a';
        r.caveat = "exact maximum only for d > d0(alpha); always a valid lower bound";
    } else {
        r.value = d;
        r.regime = 'b';
        r.caveat = "no witness with <= " + std::to_string(korder.search_bound) + " vertices; N >= d holds, and d + o(d) if k(lambda) is infinite";
    }
    return r;
}

struct OracleResult {
    std::size_t best = 0;
    std::optional<Graph> witness;
    std::size_t graphs_tested = 0;
};

/// Largest N <= nmax for which some N-vertex graph makes lambda I - A_G + J/2
/// PSD with rank <= d. Deleting a vertex preserves both properties, so the
/// search stops at the first infeasible order.
inline OracleResult brute_oracle(const Angle& angle, std::size_t d, std::size_t nmax, unsigned jobs = 1, double tol = kDefaultRankTol) {
    if (nmax > kOracleCap) throw std::invalid_argument("brute_oracle: nmax above " + std::to_string(kOracleCap));
    OracleResult r;
    if (nmax == 0) return r;
    auto levels = enumerate_levels(nmax, false, jobs);
    for (std::size_t n = 1; n <= nmax; ++n) {
        bool feasible = false;
        for (GraphCode code : levels[n - 1]) {
            ++r.graphs_tested;
            Graph g = graph_from_code(n, code);
            PsdRank pr = psd_rank(scaled_gram(g, angle.lambda()), tol);
            if (pr.is_psd && pr.rank <= d) {
                feasible = true;
                r.best = n;
                r.witness = std::move(g);
                break;
            }
        }
        if (!feasible) break;
    }
    return r;
}

}  // namespace eqkit
