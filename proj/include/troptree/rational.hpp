#pragma once

// Exact rational arithmetic.  The whole library computes over these; there is
// no floating-point fallback anywhere in the core.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <string_view>

#include "troptree/errors.hpp"

namespace troptree {

using Int = boost::multiprecision::cpp_int;

// Always in lowest terms with positive denominator; cpp_rational normalizes
// eagerly on every operation, which keeps equality tests canonical.
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return rat_den(q) == 1; }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline Int pow2(unsigned e) {
    Int r = 1;
    return r << e;
}

namespace detail {

inline bool scan_uint(std::string_view s, std::size_t& i, Int& out) {
    std::size_t start = i;
    Int v = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        v = v * 10 + (s[i] - '0');
        ++i;
    }
    if (i == start) return false;
    out = v;
    return true;
}

// Parses a rational starting at s[i]: `n`, `-n`, `n/d`, or a decimal literal
// `n.f` (converted exactly).  Advances i past the token.
inline Rational scan_rational(std::string_view s, std::size_t& i) {
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    Int num;
    if (!scan_uint(s, i, num)) throw ParseError("expected a number", i);
    Int den = 1;
    if (i < s.size() && s[i] == '/') {
        ++i;
        if (!scan_uint(s, i, den)) throw ParseError("expected a denominator", i);
        if (den == 0) throw ParseError("zero denominator", i);
    } else if (i < s.size() && s[i] == '.') {
        ++i;
        std::size_t start = i;
        Int frac;
        if (!scan_uint(s, i, frac)) throw ParseError("expected decimal digits", i);
        for (std::size_t d = start; d < i; ++d) {
            num *= 10;
            den *= 10;
        }
        num += frac;
    }
    Rational q(num, den);
    return neg ? Rational(-q) : q;
}

} // namespace detail

// Text form: `n` or `n/d` in lowest terms, ASCII, no spaces.
inline std::string format_rational(const Rational& q) {
    std::string s = rat_num(q).str();
    if (rat_den(q) != 1) {
        s += '/';
        s += rat_den(q).str();
    }
    return s;
}

inline Rational parse_rational(std::string_view s) {
    std::size_t i = 0;
    Rational q = detail::scan_rational(s, i);
    if (i != s.size()) throw ParseError("trailing characters after rational", i);
    return q;
}

// Fixed-point decimal with `digits` fractional digits, rounding half away
// from zero.  Only used when the CLI is asked for --decimal output.
inline std::string format_rational_decimal(const Rational& q, unsigned digits) {
    Int scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    Int num = rat_num(q) * scale * 2 + (q >= 0 ? rat_den(q) : -rat_den(q));
    Int den = rat_den(q) * 2;
    Int scaled = num / den;  // truncates toward zero, giving round-half-away
    bool neg = scaled < 0;
    Int mag = neg ? Int(-scaled) : scaled;
    std::string ds = mag.str();
    if (ds.size() <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
    std::string out;
    if (neg) out += '-';
    out += ds.substr(0, ds.size() - digits);
    if (digits > 0) {
        out += '.';
        out += ds.substr(ds.size() - digits);
    }
    return out;
}

} // namespace troptree
