#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace eqkit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Integer& z) { return z.convert_to<double>(); }

/// Exact rational value of a finite double (every double is a dyadic rational).
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
    auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r{Integer(scaled)};
    if (exp >= 0) {
        r *= Rational(Integer(1) << exp);
    } else {
        r /= Rational(Integer(1) << (-exp));
    }
    return r;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

/// Parses "p", "p/q", or a plain decimal "1.25" / "-0.5" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto parse_int = [](const std::string& t) {
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw std::invalid_argument("malformed integer '" + t + "'");
        for (std::size_t k = i; k < t.size(); ++k) {
            if (!std::isdigit(static_cast<unsigned char>(t[k])))
                throw std::invalid_argument("malformed integer '" + t + "'");
        }
        Integer z(t[0] == '+' ? t.substr(1) : t);
        return z;
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        Integer p = parse_int(trim(s.substr(0, slash)));
        Integer q = parse_int(trim(s.substr(slash + 1)));
        if (q == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return Rational(p, q);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        Integer w = parse_int(whole);
        if (frac.empty()) return Rational(w);
        Integer f = parse_int(frac);
        Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
        Rational r = Rational(boost::multiprecision::abs(w)) + Rational(f, scale);
        return neg ? -r : r;
    }
    return Rational(parse_int(s));
}

inline std::string to_string(const Rational& q) {
    if (denominator_of(q) == 1) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

}  // namespace eqkit
