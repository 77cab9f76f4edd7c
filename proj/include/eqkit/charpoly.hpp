#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eqkit/graph.hpp"
#include "eqkit/polynomial.hpp"

namespace eqkit {

/// Default vertex cap for exact characteristic polynomials.
inline constexpr std::size_t kExactCap = 16;

using IntMatrix = std::vector<std::vector<Integer>>;

/// Fraction-free Gaussian elimination; every intermediate stays integral.
inline Integer bareiss_determinant(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("bareiss_determinant: matrix is not square");
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// det(t I - A_G) for an integer t.
inline Integer shifted_determinant(const Graph& g, long t) {
    const std::size_t n = g.order();
    IntMatrix m(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = t;
        for (Vertex j : g.neighbors(i)) m[i][j] = -1;
    }
    return bareiss_determinant(std::move(m));
}

/// Unique polynomial of degree <= n through (x_k, y_k), k = 0..n, with
/// x_k = k, via Newton divided differences over Q.
inline IntPolynomial interpolate_integer_points(const std::vector<Integer>& ys) {
    const std::size_t m = ys.size();
    std::vector<Rational> dd(ys.begin(), ys.end());
    for (std::size_t level = 1; level < m; ++level)
        for (std::size_t i = m - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / Rational(static_cast<long>(level));
    // Horner on the Newton form: p(x) = dd0 + (x - 0)(dd1 + (x - 1)(dd2 + ...)).
    std::vector<Rational> poly{dd[m - 1]};
    for (std::size_t i = m - 1; i-- > 0;) {
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        const Rational shift(static_cast<long>(i));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k];
            next[k] -= shift * poly[k];
        }
        next[0] += dd[i];
        poly = std::move(next);
    }
    std::vector<Integer> coeffs;
    coeffs.reserve(poly.size());
    for (const auto& c : poly) {
        if (denominator_of(c) != 1) throw std::logic_error("interpolate_integer_points: non-integral coefficient");
        coeffs.push_back(numerator_of(c));
    }
    return IntPolynomial(std::move(coeffs));
}

/// det(x I - A_G) exactly: Bareiss determinants at x = 0..n, then interpolation.
inline IntPolynomial charpoly_exact(const Graph& g, std::size_t cap = kExactCap) {
    const std::size_t n = g.order();
    if (n > cap) throw std::invalid_argument("charpoly_exact: " + std::to_string(n) + " vertices exceeds the exact cap " + std::to_string(cap));
    std::vector<Integer> values;
    values.reserve(n + 1);
    for (std::size_t t = 0; t <= n; ++t) values.push_back(shifted_determinant(g, static_cast<long>(t)));
    IntPolynomial p = interpolate_integer_points(values);
    if (p.degree() != static_cast<int>(n) || p.leading() != 1) throw std::logic_error("charpoly_exact: result is not monic of degree n");
    return p;
}

}  // namespace eqkit
