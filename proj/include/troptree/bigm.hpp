#pragma once

// Linear polynomials a + b*M over exact rationals, ordered by their eventual
// values as M grows without bound: compare slopes first, then constants.
// Computing with these is the symbolic big-M mode; plain rationals are the
// special case of slope zero, not a separate code path.

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "troptree/errors.hpp"
#include "troptree/rational.hpp"

namespace troptree {

class BigM {
public:
    BigM() = default;
    BigM(Rational constant, Rational slope)
        : constant_(std::move(constant)), slope_(std::move(slope)) {}
    BigM(int constant) : constant_(constant) {}           // NOLINT: implicit by design
    BigM(Rational constant) : constant_(std::move(constant)) {}

    static BigM m() { return BigM(0, 1); }

    const Rational& constant() const { return constant_; }
    const Rational& slope() const { return slope_; }

    bool is_zero() const { return constant_ == 0 && slope_ == 0; }
    bool is_numeric() const { return slope_ == 0; }

    Rational eval(const Rational& m0) const { return constant_ + slope_ * m0; }

    BigM operator-() const { return BigM(-constant_, -slope_); }

    BigM& operator+=(const BigM& o) {
        constant_ += o.constant_;
        slope_ += o.slope_;
        return *this;
    }
    BigM& operator-=(const BigM& o) {
        constant_ -= o.constant_;
        slope_ -= o.slope_;
        return *this;
    }

    friend BigM operator+(BigM a, const BigM& b) { return a += b; }
    friend BigM operator-(BigM a, const BigM& b) { return a -= b; }

    // Scaling by an exact rational; there is no division by a BigM anywhere.
    friend BigM operator*(const Rational& c, const BigM& x) {
        return BigM(c * x.constant_, c * x.slope_);
    }
    friend BigM operator*(const BigM& x, const Rational& c) { return c * x; }

    friend bool operator==(const BigM& a, const BigM& b) {
        return a.slope_ == b.slope_ && a.constant_ == b.constant_;
    }

    // Order of eventual values: slope decides, constants break ties.
    friend std::strong_ordering operator<=>(const BigM& a, const BigM& b) {
        if (a.slope_ != b.slope_) return a.slope_ < b.slope_ ? std::strong_ordering::less
                                                             : std::strong_ordering::greater;
        if (a.constant_ != b.constant_) return a.constant_ < b.constant_
                                                   ? std::strong_ordering::less
                                                   : std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    Rational constant_;
    Rational slope_;
};

template <typename It>
BigM min_value(It first, It last) {
    if (first == last) throw InputError("min over an empty sequence");
    BigM best = *first;
    for (++first; first != last; ++first)
        if (*first < best) best = *first;
    return best;
}

template <typename It>
BigM max_value(It first, It last) {
    if (first == last) throw InputError("max over an empty sequence");
    BigM best = *first;
    for (++first; first != last; ++first)
        if (best < *first) best = *first;
    return best;
}

inline BigM min_value(const std::vector<BigM>& v) { return min_value(v.begin(), v.end()); }
inline BigM max_value(const std::vector<BigM>& v) { return max_value(v.begin(), v.end()); }

// Canonical text form: `a`, `a/b`, `a+c*M`, `a/b+c/d*M`, with the sign of a
// negative slope folded into the separator (`a-c*M`).  ASCII, no spaces.
inline std::string format_bigm(const BigM& x) {
    std::string s = format_rational(x.constant());
    if (x.slope() != 0) {
        s += x.slope() > 0 ? '+' : '-';
        s += format_rational(rat_abs(x.slope()));
        s += "*M";
    }
    return s;
}

// Accepts the printed forms plus the shorthands `M`, `-M`, `c*M`, `a+M`.
inline BigM parse_bigm(std::string_view s) {
    std::size_t i = 0;
    Rational constant = 0, slope = 0;
    bool has_const = false;

    auto scan_m_term = [&](bool neg, const Rational& coef) {
        // caller has already consumed the coefficient and sits on 'M' or '*'
        if (i < s.size() && s[i] == '*') ++i;
        if (i >= s.size() || s[i] != 'M') throw ParseError("expected M", i);
        ++i;
        slope = neg ? Rational(-coef) : coef;
    };

    // first term: rational, M-term, or rational followed by an M-term
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    if (i < s.size() && s[i] == 'M') {
        scan_m_term(neg, 1);
    } else {
        std::size_t save = i;
        Rational q = detail::scan_rational(s, i);
        if (i < s.size() && (s[i] == '*' || s[i] == 'M')) {
            i = save;
            Rational coef = detail::scan_rational(s, i);
            scan_m_term(false, neg ? Rational(-coef) : coef);
            neg = false;
        } else {
            constant = neg ? Rational(-q) : q;
            has_const = true;
        }
    }

    // optional second term, which must be an M-term
    if (has_const && i < s.size()) {
        if (s[i] != '+' && s[i] != '-') throw ParseError("expected + or - before M term", i);
        bool mneg = (s[i] == '-');
        ++i;
        if (i < s.size() && s[i] == 'M') {
            scan_m_term(mneg, 1);
        } else {
            Rational coef = detail::scan_rational(s, i);
            scan_m_term(mneg, coef);
        }
    }
    if (i != s.size()) throw ParseError("trailing characters after scalar", i);
    return BigM(constant, slope);
}

inline std::string format_bigm_decimal(const BigM& x, unsigned digits) {
    std::string s = format_rational_decimal(x.constant(), digits);
    if (x.slope() != 0) {
        s += x.slope() > 0 ? '+' : '-';
        s += format_rational_decimal(rat_abs(x.slope()), digits);
        s += "*M";
    }
    return s;
}

} // namespace troptree
