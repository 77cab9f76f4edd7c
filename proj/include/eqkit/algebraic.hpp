#pragma once

#include <cmath>
#include <compare>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqkit/numeric.hpp"
#include "eqkit/polynomial.hpp"

namespace eqkit {

/// Exact real algebraic number: a squarefree integer polynomial with a
/// rational interval (lo, hi] containing exactly one of its roots.
///
/// Irreducibility of the polynomial is not checked. Callers that want a
/// k(lambda) certificate to mean "minimal polynomial" must supply one.
class AlgebraicNumber {
public:
    static AlgebraicNumber rational(const Rational& q) {
        IntPolynomial p(std::vector<Integer>{-numerator_of(q), denominator_of(q)});
        return AlgebraicNumber(p.primitive(), q - 1, q);
    }

    static AlgebraicNumber integer(long v) { return rational(Rational(v)); }

    /// Validates squarefreeness and that (lo, hi] isolates exactly one root.
    static AlgebraicNumber from_interval(const IntPolynomial& poly, const Rational& lo, const Rational& hi) {
        if (poly.degree() < 1) throw std::invalid_argument("algebraic number needs a polynomial of degree >= 1");
        if (!(lo < hi)) throw std::invalid_argument("algebraic number needs lo < hi");
        if (squarefree_part(poly).degree() != poly.degree()) throw std::invalid_argument("polynomial " + poly.to_string() + " is not squarefree");
        AlgebraicNumber a(poly.primitive(), lo, hi);
        const int c = a.chain().count(lo, hi);
        if (c != 1) throw std::invalid_argument("interval (" + eqkit::to_string(lo) + ", " + eqkit::to_string(hi) + "] holds " + std::to_string(c) + " roots of " + poly.to_string() + ", need exactly 1");
        return a.simplified();
    }

    /// The root of `poly` nearest a floating approximation accurate to well
    /// below 1e-12 relative.
    static AlgebraicNumber from_approximation(const IntPolynomial& poly, double approx) {
        IntPolynomial sq = squarefree_part(poly);
        SturmChain sc(sq);
        const Rational centre = rational_from_double(approx);
        const double floor_width = 1e-12 * std::max(1.0, std::abs(approx));
        for (Rational delta = 1; to_double(delta) >= floor_width; delta /= 2) {
            if (sc.count(centre - delta, centre + delta) == 1) return from_interval(sq, centre - delta, centre + delta);
        }
        throw std::invalid_argument("could not isolate a root of " + poly.to_string() + " near " + std::to_string(approx));
    }

    /// a + b * sqrt(c) with rational a, b and c >= 0.
    static AlgebraicNumber quadratic(const Rational& a, const Rational& b, const Rational& c) {
        if (c < 0) throw std::invalid_argument("negative radicand");
        if (b == 0 || c == 0) return rational(a);
        const Integer cn = numerator_of(c);
        const Integer cd = denominator_of(c);
        const Integer rn = boost::multiprecision::sqrt(cn);
        const Integer rd = boost::multiprecision::sqrt(cd);
        if (rn * rn == cn && rd * rd == cd) return rational(a + b * Rational(rn, rd));
        // (x - a)^2 - b^2 c = x^2 - 2a x + (a^2 - b^2 c), cleared of denominators.
        const Rational c0 = a * a - b * b * c;
        const Rational c1 = -2 * a;
        std::vector<Rational> rat{c0, c1, Rational(1)};
        IntPolynomial poly = detail::from_rat_positive(rat);
        return from_approximation(poly, to_double(a) + to_double(b) * std::sqrt(to_double(c)));
    }

    const IntPolynomial& minpoly() const { return poly_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    int degree() const { return poly_.degree(); }

    std::optional<Rational> as_rational() const {
        if (poly_.degree() != 1) return std::nullopt;
        return Rational(-poly_.coeff(0), poly_.coeff(1));
    }

    /// One bisection step; the new interval still isolates the root.
    AlgebraicNumber bisected() const {
        if (as_rational()) return *this;
        const Rational mid = (lo_ + hi_) / 2;
        if (chain().count(lo_, mid) == 1) return AlgebraicNumber(poly_, lo_, mid, chain_);
        return AlgebraicNumber(poly_, mid, hi_, chain_);
    }

    /// Refined until hi - lo <= width (exact values are returned unchanged).
    AlgebraicNumber refined_to(const Rational& width) const {
        if (auto q = as_rational()) return AlgebraicNumber(poly_, *q - width / 2, *q, chain_);
        AlgebraicNumber x = *this;
        while (x.hi_ - x.lo_ > width) x = x.bisected();
        return x;
    }

    /// Floating approximation; |approx() - value| <= approx_error().
    double approx() const {
        if (auto q = as_rational()) return to_double(*q);
        AlgebraicNumber x = refined_to(Rational(1, Integer(1) << 60) * (1 + boost::multiprecision::abs(hi_)));
        return to_double((x.lo_ + x.hi_) / 2);
    }

    /// Guaranteed bound on the error of approx() before rounding to double.
    double approx_error() const {
        if (as_rational()) return 0.0;
        return to_double(Rational(1, Integer(1) << 60) * (1 + boost::multiprecision::abs(hi_)));
    }

    const SturmChain& chain() const {
        if (!chain_) chain_ = std::make_shared<const SturmChain>(poly_);
        return *chain_;
    }

    std::string to_string() const {
        if (auto q = as_rational()) return eqkit::to_string(*q);
        return "root of " + poly_.to_string() + " in (" + eqkit::to_string(lo_) + ", " + eqkit::to_string(hi_) + "]";
    }

    /// "poly:[c0,c1,...];interval:lo,hi" form accepted by parse_algebraic.
    std::string to_expression() const {
        std::string s = "poly:[";
        for (std::size_t i = 0; i < poly_.coeffs().size(); ++i) {
            if (i) s += ",";
            s += poly_.coeffs()[i].str();
        }
        return s + "];interval:" + eqkit::to_string(lo_) + "," + eqkit::to_string(hi_);
    }

private:
    AlgebraicNumber(IntPolynomial poly, Rational lo, Rational hi, std::shared_ptr<const SturmChain> chain = nullptr)
        : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)), chain_(std::move(chain)) {}

    AlgebraicNumber simplified() const {
        if (auto q = as_rational()) return rational(*q);
        return *this;
    }

    IntPolynomial poly_;
    Rational lo_;
    Rational hi_;
    mutable std::shared_ptr<const SturmChain> chain_;
};

/// Exact trichotomy: bisect until the intervals separate, or detect equality
/// through a common root of gcd(minpoly_x, minpoly_y) inside both intervals.
inline std::strong_ordering compare(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    auto qx = x.as_rational();
    auto qy = y.as_rational();
    if (qx && qy) return *qx < *qy ? std::strong_ordering::less : (*qy < *qx ? std::strong_ordering::greater : std::strong_ordering::equal);
    const IntPolynomial g = gcd(x.minpoly(), y.minpoly());
    std::optional<SturmChain> gchain;
    if (g.degree() >= 1) gchain.emplace(g);
    AlgebraicNumber a = x;
    AlgebraicNumber b = y;
    while (true) {
        if (a.hi() <= b.lo()) return std::strong_ordering::less;
        if (b.hi() <= a.lo()) return std::strong_ordering::greater;
        if (gchain) {
            const Rational lo = std::max(a.lo(), b.lo());
            const Rational hi = std::min(a.hi(), b.hi());
            if (lo < hi && gchain->count(lo, hi) >= 1) return std::strong_ordering::equal;
        }
        // Exact rationals sit at hi of their interval; shrink from below.
        a = qx ? AlgebraicNumber::rational(*qx).refined_to((a.hi() - a.lo()) / 2) : a.bisected();
        b = qy ? AlgebraicNumber::rational(*qy).refined_to((b.hi() - b.lo()) / 2) : b.bisected();
    }
}

inline bool operator==(const AlgebraicNumber& x, const AlgebraicNumber& y) { return compare(x, y) == 0; }

inline int sign(const AlgebraicNumber& x) {
    auto c = compare(x, AlgebraicNumber::integer(0));
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

namespace detail {

/// Image of x under a decreasing Moebius map y = f(x), given the transformed
/// polynomial whose roots are f(roots of minpoly_x) and a rational f defined
/// on (domain_lo, inf).
template <typename F>
AlgebraicNumber map_decreasing(AlgebraicNumber x, const IntPolynomial& image_poly, F f, const Rational& domain_lo) {
    while (x.lo() <= domain_lo) x = x.bisected();
    const IntPolynomial sq = squarefree_part(image_poly);
    SturmChain sc(sq);
    while (true) {
        const Rational lo = f(x.hi());
        const Rational hi = f(x.lo());
        if (sq.sign_at(lo) == 0) return AlgebraicNumber::rational(lo);
        if (sc.count(lo, hi) == 1) return AlgebraicNumber::from_interval(sq, lo, hi);
        x = x.bisected();
    }
}

}  // namespace detail

/// The angle parameter alpha in (0, 1): the lines meet at angle arccos(alpha).
class Angle {
public:
    explicit Angle(AlgebraicNumber alpha) : alpha_(std::move(alpha)) {
        if (sign(alpha_) <= 0 || compare(alpha_, AlgebraicNumber::integer(1)) >= 0)
            throw std::invalid_argument("alpha must satisfy 0 < alpha < 1, got " + alpha_.to_string());
        value_ = alpha_.approx();
    }
    static Angle rational(long p, long q) { return Angle(AlgebraicNumber::rational(Rational(p, q))); }

    const AlgebraicNumber& exact() const { return alpha_; }
    double value() const { return value_; }
    /// lambda = (1 - alpha) / (2 alpha) as a double.
    double lambda() const { return (1.0 - value_) / (2.0 * value_); }

private:
    AlgebraicNumber alpha_;
    double value_ = 0.0;
};

/// lambda = (1 - alpha) / (2 alpha).
inline AlgebraicNumber lambda_from_alpha(const Angle& angle) {
    const AlgebraicNumber& alpha = angle.exact();
    if (auto q = alpha.as_rational()) return AlgebraicNumber::rational((1 - *q) / (2 * *q));
    // Roots transform as alpha = 1/(2 lambda + 1): Q(x) = (2x + 1)^m P(1/(2x + 1)).
    IntPolynomial image = substitute_fraction(alpha.minpoly(), 0, 1, 2, 1);
    return detail::map_decreasing(alpha, image, [](const Rational& a) { return (1 - a) / (2 * a); }, Rational(0));
}

/// alpha = 1 / (2 lambda + 1), the inverse of lambda_from_alpha.
inline Angle alpha_from_lambda(const AlgebraicNumber& lambda) {
    if (sign(lambda) <= 0) throw std::invalid_argument("lambda must be positive, got " + lambda.to_string());
    if (auto q = lambda.as_rational()) return Angle(AlgebraicNumber::rational(1 / (2 * *q + 1)));
    // P_alpha(y) = (2y)^m P_lambda((1 - y)/(2y)).
    IntPolynomial image = substitute_fraction(lambda.minpoly(), -1, 1, 2, 0);
    return Angle(detail::map_decreasing(lambda, image, [](const Rational& l) { return 1 / (2 * l + 1); }, Rational(0)));
}

namespace detail {

struct QuadraticParts {
    Rational a = 0;
    Rational b = 0;
    std::optional<Rational> radicand;
};

inline void accumulate_terms(const std::string& expr, QuadraticParts& parts, const Rational& scale) {
    std::vector<std::string> terms;
    std::string cur;
    int depth = 0;
    for (std::size_t i = 0; i < expr.size(); ++i) {
        char ch = expr[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        const bool sign_break = (ch == '+' || ch == '-') && depth == 0 && i > 0 && expr[i - 1] != '*' && expr[i - 1] != '/' && expr[i - 1] != 'e';
        if (sign_break) {
            terms.push_back(cur);
            cur.clear();
        }
        cur.push_back(ch);
    }
    terms.push_back(cur);
    for (std::string term : terms) {
        if (term.empty()) throw std::invalid_argument("malformed expression '" + expr + "'");
        Rational sgn = 1;
        if (term[0] == '+' || term[0] == '-') {
            if (term[0] == '-') sgn = -1;
            term.erase(0, 1);
        }
        auto at = term.find("sqrt(");
        if (at == std::string::npos) {
            parts.a += scale * sgn * parse_rational(term);
            continue;
        }
        auto close = term.find(')', at);
        if (close == std::string::npos || close + 1 != term.size()) throw std::invalid_argument("malformed sqrt term '" + term + "'");
        Rational coeff = 1;
        if (at > 0) {
            std::string c = term.substr(0, at);
            if (c.back() != '*') throw std::invalid_argument("expected '*' before sqrt in '" + term + "'");
            c.pop_back();
            coeff = parse_rational(c);
        }
        Rational rad = parse_rational(term.substr(at + 5, close - at - 5));
        if (parts.radicand && *parts.radicand != rad) throw std::invalid_argument("only one distinct radicand is supported");
        parts.radicand = rad;
        parts.b += scale * sgn * coeff;
    }
}

}  // namespace detail

/// Parses "p/q", decimals, quadratic surds such as "1/2+1/2*sqrt(5)" or
/// "(1+sqrt(5))/2", and "poly:[c0,c1,...];interval:lo,hi".
inline AlgebraicNumber parse_algebraic(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty number expression");
    if (s.rfind("poly:", 0) == 0) {
        auto semi = s.find(";interval:");
        if (semi == std::string::npos || s[5] != '[' || s[semi - 1] != ']') throw std::invalid_argument("expected poly:[c0,...];interval:lo,hi");
        std::string body = s.substr(6, semi - 7);
        std::vector<Integer> coeffs;
        std::size_t start = 0;
        while (start <= body.size()) {
            auto comma = body.find(',', start);
            std::string tok = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            Rational r = parse_rational(tok);
            if (denominator_of(r) != 1) throw std::invalid_argument("polynomial coefficients must be integers");
            coeffs.push_back(numerator_of(r));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        std::string iv = s.substr(semi + 10);
        auto comma = iv.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("interval needs lo,hi");
        return AlgebraicNumber::from_interval(IntPolynomial(coeffs), parse_rational(iv.substr(0, comma)), parse_rational(iv.substr(comma + 1)));
    }
    detail::QuadraticParts parts;
    if (s.front() == '(') {
        int depth = 0;
        std::size_t close = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')' && --depth == 0) {
                close = i;
                break;
            }
        }
        if (close == 0) throw std::invalid_argument("unbalanced parentheses in '" + s + "'");
        Rational divisor = 1;
        if (close + 1 < s.size()) {
            if (s[close + 1] != '/') throw std::invalid_argument("expected '/' after parenthesised expression");
            divisor = parse_rational(s.substr(close + 2));
        }
        if (divisor == 0) throw std::invalid_argument("division by zero");
        detail::accumulate_terms(s.substr(1, close - 1), parts, 1 / divisor);
    } else {
        detail::accumulate_terms(s, parts, Rational(1));
    }
    if (!parts.radicand) return AlgebraicNumber::rational(parts.a);
    return AlgebraicNumber::quadratic(parts.a, parts.b, *parts.radicand);
}

inline Angle parse_angle(std::string_view text) { return Angle(parse_algebraic(text)); }

}  // namespace eqkit
