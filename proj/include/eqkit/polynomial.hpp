#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eqkit/numeric.hpp"

namespace eqkit {

/// Dense integer polynomial, coefficients stored low degree first.
/// The zero polynomial has no coefficients and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
    IntPolynomial(std::initializer_list<long long> coeffs) {
        coeffs_.reserve(coeffs.size());
        for (long long c : coeffs) coeffs_.emplace_back(c);
        normalize();
    }

    static IntPolynomial monomial(const Integer& c, std::size_t degree) {
        std::vector<Integer> v(degree + 1);
        v[degree] = c;
        return IntPolynomial(std::move(v));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Integer>& coeffs() const { return coeffs_; }
    Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
    const Integer& leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of the zero polynomial");
        return coeffs_.back();
    }

    Integer content() const {
        Integer g = 0;
        for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
        return g;
    }

    /// Content removed and leading coefficient made positive.
    IntPolynomial primitive() const {
        if (is_zero()) return {};
        Integer g = content();
        if (leading() < 0) g = -g;
        std::vector<Integer> v = coeffs_;
        for (auto& c : v) c /= g;
        return IntPolynomial(std::move(v));
    }

    IntPolynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Integer> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
        return IntPolynomial(std::move(v));
    }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
        return acc;
    }

    Integer eval(const Integer& x) const {
        Integer acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    double eval(double x) const {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
        return acc;
    }

    /// Sign of p(p_num/q_den) computed without building a rational (q_den > 0).
    int sign_at(const Rational& x) const {
        if (is_zero()) return 0;
        const Integer num = numerator_of(x);
        const Integer den = denominator_of(x);
        // Horner on the homogenized form den^deg * p(num/den) = sum c_i num^i den^(deg-i).
        Integer h = 0;
        Integer dp = 1;
        std::vector<Integer> den_powers(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            den_powers[i] = dp;
            dp *= den;
        }
        const std::size_t deg = coeffs_.size() - 1;
        for (std::size_t i = coeffs_.size(); i-- > 0;) h = h * num + coeffs_[i] * den_powers[deg - i];
        return h > 0 ? 1 : (h < 0 ? -1 : 0);
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<Integer> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return IntPolynomial(std::move(v));
    }
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<Integer> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
        return IntPolynomial(std::move(v));
    }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPolynomial(std::move(v));
    }
    friend IntPolynomial operator*(const Integer& s, const IntPolynomial& a) {
        std::vector<Integer> v = a.coeffs_;
        for (auto& c : v) c *= s;
        return IntPolynomial(std::move(v));
    }

    IntPolynomial pow(unsigned e) const {
        IntPolynomial result{1};
        for (unsigned i = 0; i < e; ++i) result = result * *this;
        return result;
    }

    /// Human-readable form, e.g. "x^3 - 3*x - 2".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const Integer& c = coeffs_[i];
            if (c == 0) continue;
            Integer mag = boost::multiprecision::abs(c);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0 || mag != 1) {
                os << mag;
                if (i > 0) os << "*";
            }
            if (i >= 1) os << "x";
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Integer> coeffs_;
};

namespace detail {

using RatPoly = std::vector<Rational>;

inline void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly to_rat(const IntPolynomial& p) {
    RatPoly r;
    r.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) r.emplace_back(c);
    return r;
}

/// Multiplies by the positive lcm of denominators and divides by the positive
/// content. Never flips sign, which Sturm chains depend on.
inline IntPolynomial from_rat_positive(const RatPoly& p) {
    Integer l = 1;
    for (const auto& c : p) {
        Integer d = denominator_of(c);
        l = l / boost::multiprecision::gcd(l, d) * d;
    }
    std::vector<Integer> v;
    v.reserve(p.size());
    for (const auto& c : p) v.push_back(numerator_of(c) * (l / denominator_of(c)));
    Integer g = 0;
    for (const auto& c : v) g = boost::multiprecision::gcd(g, c);
    if (g > 1)
        for (auto& c : v) c /= g;
    return IntPolynomial(std::move(v));
}

inline std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    trim(a);
    RatPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    const Rational& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        Rational f = a.back() / lb;
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {std::move(q), std::move(a)};
}

}  // namespace detail

/// Quotient and remainder over Q, each rescaled to an integer polynomial by a
/// positive factor.
inline std::pair<IntPolynomial, IntPolynomial> divmod_scaled(const IntPolynomial& a, const IntPolynomial& b) {
    auto [q, r] = detail::divmod(detail::to_rat(a), detail::to_rat(b));
    return {detail::from_rat_positive(q), detail::from_rat_positive(r)};
}

/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
inline IntPolynomial gcd(IntPolynomial a, IntPolynomial b) {
    a = a.primitive();
    b = b.primitive();
    while (!b.is_zero()) {
        auto [q, r] = divmod_scaled(a, b);
        a = std::move(b);
        b = r.primitive();
    }
    return a.primitive();
}

/// True iff m divides p over Q, equivalently primitive(m) | primitive(p) over Z.
inline bool poly_divides(const IntPolynomial& m, const IntPolynomial& p) {
    if (m.is_zero()) throw std::invalid_argument("poly_divides: zero divisor");
    if (p.is_zero()) return true;
    auto [q, r] = detail::divmod(detail::to_rat(p.primitive()), detail::to_rat(m.primitive()));
    return r.empty();
}

/// Exact quotient p / m when m divides p; nullopt otherwise. The quotient is
/// scaled so that quotient * primitive(m) = p holds with integer coefficients
/// when p has integer content divisible accordingly (always true for monic m or
/// primitive p by Gauss's lemma).
inline std::optional<IntPolynomial> exact_quotient(const IntPolynomial& p, const IntPolynomial& m) {
    auto [q, r] = detail::divmod(detail::to_rat(p), detail::to_rat(m));
    if (!r.empty()) return std::nullopt;
    std::vector<Integer> v;
    for (const auto& c : q) {
        if (denominator_of(c) != 1) return std::nullopt;
        v.push_back(numerator_of(c));
    }
    return IntPolynomial(std::move(v));
}

/// p / gcd(p, p'), primitive.
inline IntPolynomial squarefree_part(const IntPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree_part of the zero polynomial");
    if (p.degree() == 0) return IntPolynomial{1};
    IntPolynomial g = gcd(p, p.derivative());
    auto [q, r] = divmod_scaled(p, g);
    return q.primitive();
}

/// Sturm chain of the squarefree part of a polynomial; counts distinct real
/// roots in half-open intervals (lo, hi].
class SturmChain {
public:
    explicit SturmChain(const IntPolynomial& p) {
        if (p.is_zero()) throw std::invalid_argument("Sturm chain of the zero polynomial");
        IntPolynomial s = squarefree_part(p);
        chain_.push_back(s);
        IntPolynomial d = s.derivative();
        if (!d.is_zero()) chain_.push_back(d.primitive());
        while (chain_.size() >= 2 && chain_.back().degree() > 0) {
            const auto& a = chain_[chain_.size() - 2];
            const auto& b = chain_.back();
            auto [q, r] = divmod_scaled(a, b);
            if (r.is_zero()) break;
            chain_.push_back(Integer(-1) * r);
        }
    }

    const IntPolynomial& squarefree() const { return chain_.front(); }
    const std::vector<IntPolynomial>& chain() const { return chain_; }

    int variations(const Rational& x) const {
        int count = 0;
        int last = 0;
        for (const auto& q : chain_) {
            int s = q.sign_at(x);
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    }

    int count(const Rational& lo, const Rational& hi) const {
        if (!(lo < hi)) throw std::invalid_argument("sturm_count: need lo < hi");
        return variations(lo) - variations(hi);
    }

    /// Number of distinct real roots.
    int total() const {
        // Signs at -inf/+inf are determined by leading coefficients and degrees.
        int v_neg = 0;
        int v_pos = 0;
        int last_neg = 0;
        int last_pos = 0;
        for (const auto& q : chain_) {
            int lc = q.leading() > 0 ? 1 : -1;
            int sp = lc;
            int sn = (q.degree() % 2 == 0) ? lc : -lc;
            if (last_pos != 0 && sp != last_pos) ++v_pos;
            if (last_neg != 0 && sn != last_neg) ++v_neg;
            last_pos = sp;
            last_neg = sn;
        }
        return v_neg - v_pos;
    }

private:
    std::vector<IntPolynomial> chain_;
};

inline int sturm_count(const IntPolynomial& p, const Rational& lo, const Rational& hi) {
    return SturmChain(p).count(lo, hi);
}

/// Cauchy bound: every real root lies in (-B, B].
inline Rational root_bound(const IntPolynomial& p) {
    Rational m = 0;
    const Rational lc = Rational(boost::multiprecision::abs(p.leading()));
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = Rational(boost::multiprecision::abs(p.coeffs()[i])) / lc;
        if (r > m) m = r;
    }
    return m + 1;
}

struct RootInterval {
    Rational lo;
    Rational hi;  // root in (lo, hi]
};

/// Isolates every distinct real root into a half-open interval of width at
/// most `width`, sorted ascending.
inline std::vector<RootInterval> isolate_real_roots(const IntPolynomial& p, const Rational& width) {
    SturmChain sc(p);
    std::vector<RootInterval> out;
    if (sc.squarefree().degree() <= 0) return out;
    Rational b = root_bound(sc.squarefree());
    std::vector<RootInterval> stack{{-b, b}};
    while (!stack.empty()) {
        RootInterval iv = stack.back();
        stack.pop_back();
        int c = sc.count(iv.lo, iv.hi);
        if (c == 0) continue;
        if (c == 1 && iv.hi - iv.lo <= width) {
            out.push_back(iv);
            continue;
        }
        Rational mid = (iv.lo + iv.hi) / 2;
        stack.push_back({iv.lo, mid});
        stack.push_back({mid, iv.hi});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

/// (c*y + d)^m * p((a*y + b)/(c*y + d)) with m = deg p.
inline IntPolynomial substitute_fraction(const IntPolynomial& p, long a, long b, long c, long d) {
    if (p.is_zero()) return {};
    const IntPolynomial num{b, a};
    const IntPolynomial den{d, c};
    const auto m = static_cast<unsigned>(p.degree());
    IntPolynomial acc;
    for (unsigned i = 0; i <= m; ++i) {
        if (p.coeffs()[i] == 0) continue;
        acc = acc + p.coeffs()[i] * (num.pow(i) * den.pow(m - i));
    }
    return acc;
}

}  // namespace eqkit
