#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqkit/algebraic.hpp"
#include "eqkit/canonical.hpp"
#include "eqkit/charpoly.hpp"
#include "eqkit/graph_io.hpp"
#include "eqkit/linalg.hpp"

namespace eqkit {

/// Default search bound for k(lambda).
inline constexpr std::size_t kDefaultKmax = 8;
/// Floating gate before the exact certificate; far looser than Jacobi error.
inline constexpr double kRadiusPrefilterTol = 1e-6;

/// Exact evidence that lambda_1(G) = lambda.
struct RadiusCertificate {
    IntPolynomial charpoly;
    bool minpoly_divides = false;
    Rational interval_lo;  // (lo, hi] holds exactly one distinct root of the charpoly
    Rational interval_hi;
    int roots_in_interval = 0;
    int roots_above = 0;  // distinct roots in (hi, n]
    std::size_t upper_bound = 0;
    bool holds = false;
};

/// lambda_1(G) == lambda exactly: minpoly(lambda) divides det(xI - A_G), and
/// after refining lambda's interval to isolate a single charpoly root there is
/// no charpoly root in (hi, n], n being an upper bound for lambda_1.
inline RadiusCertificate certify_radius(const Graph& g, const AlgebraicNumber& lambda) {
    if (g.order() == 0) throw std::invalid_argument("certify_radius: empty graph");
    RadiusCertificate cert;
    cert.charpoly = charpoly_exact(g);
    cert.upper_bound = g.order();
    cert.minpoly_divides = poly_divides(lambda.minpoly(), cert.charpoly);
    if (!cert.minpoly_divides) return cert;
    SturmChain sc(cert.charpoly);
    const Rational bound(static_cast<long>(g.order()));
    AlgebraicNumber x = lambda;
    Rational width = lambda.hi() - lambda.lo();
    while (sc.count(x.lo(), x.hi()) != 1 || x.hi() >= bound) {
        width /= 2;
        x = x.as_rational() ? x.refined_to(width) : x.bisected();
    }
    cert.interval_lo = x.lo();
    cert.interval_hi = x.hi();
    cert.roots_in_interval = 1;
    cert.roots_above = sc.count(x.hi(), bound);
    cert.holds = cert.roots_above == 0;
    return cert;
}

inline bool exact_radius_eq(const Graph& g, const AlgebraicNumber& lambda) { return certify_radius(g, lambda).holds; }

struct KOrderResult {
    AlgebraicNumber lambda;
    std::optional<std::size_t> k;  // empty: no witness on <= search_bound vertices
    std::optional<Graph> witness;
    std::optional<RadiusCertificate> certificate;
    std::size_t search_bound = 0;
    std::size_t graphs_examined = 0;
    std::size_t exact_checks = 0;

    bool found() const { return k.has_value(); }
};

/// Smallest k <= kmax such that a connected k-vertex graph has spectral radius
/// exactly lambda. A miss only means k(lambda) > kmax. Among witnesses of the
/// minimal order the one with the smallest canonical code is returned.
inline KOrderResult k_order(const AlgebraicNumber& lambda, std::size_t kmax = kDefaultKmax, unsigned jobs = 1,
                            std::size_t cap = kEnumerationCap) {
    if (sign(lambda) <= 0) throw std::invalid_argument("k_order: lambda must be positive");
    if (kmax < 1 || kmax > cap) throw std::invalid_argument("k_order: kmax must lie in 1.." + std::to_string(cap));
    KOrderResult result{lambda, std::nullopt, std::nullopt, std::nullopt, kmax, 0, 0};
    const double approx = lambda.approx();
    std::vector<GraphCode> level{GraphCode{0}};
    for (std::size_t n = 1; n <= kmax; ++n) {
        if (n > 1) level = detail::extend_level(level, n - 1, true, jobs);
        // lambda_1 of a connected n-vertex graph is at most n - 1.
        if (approx > static_cast<double>(n - 1) + kRadiusPrefilterTol) {
            result.graphs_examined += level.size();
            continue;
        }
        for (GraphCode code : level) {
            ++result.graphs_examined;
            Graph g = graph_from_code(n, code);
            if (std::abs(spectral_radius(g) - approx) > kRadiusPrefilterTol) continue;
            ++result.exact_checks;
            RadiusCertificate cert = certify_radius(g, lambda);
            if (cert.holds) {
                result.k = n;
                result.witness = std::move(g);
                result.certificate = std::move(cert);
                return result;
            }
        }
    }
    return result;
}

inline nlohmann::json certificate_json(const KOrderResult& r) {
    nlohmann::json j;
    j["lambda"] = r.lambda.to_expression();
    j["lambda_approx"] = r.lambda.approx();
    j["search_bound"] = r.search_bound;
    j["graphs_examined"] = r.graphs_examined;
    j["exact_checks"] = r.exact_checks;
    if (!r.found()) {
        j["found"] = false;
        j["k_lower_bound"] = r.search_bound + 1;
        return j;
    }
    const auto& c = *r.certificate;
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& x : c.charpoly.coeffs()) coeffs.push_back(x.str());
    j["found"] = true;
    j["k"] = *r.k;
    j["witness_graph6"] = to_graph6(*r.witness);
    j["charpoly"] = coeffs;
    j["charpoly_text"] = c.charpoly.to_string();
    j["minpoly"] = r.lambda.minpoly().to_string();
    j["minpoly_divides_charpoly"] = c.minpoly_divides;
    j["sturm"] = {{"interval", {to_string(c.interval_lo), to_string(c.interval_hi)}},
                  {"roots_in_interval", c.roots_in_interval},
                  {"roots_above_interval", c.roots_above},
                  {"upper_bound", c.upper_bound}};
    return j;
}

}  // namespace eqkit
