#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "toda/errors.hpp"

namespace toda {

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline bool is_integer(const Rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

/// num/den with any signs and canonicalised.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw ParseError("zero denominator");
    return Rational(num) / Rational(den);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// "p" or "p/q".
inline std::string to_string(const Rational& q) { return q.str(); }

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline Integer parse_integer(std::string_view s, std::string_view whole) {
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw ParseError("malformed number '" + std::string(whole) + "'");
    Integer v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("malformed number '" + std::string(whole) + "'");
        v = v * 10 + (c - '0');
    }
    return neg ? Integer(-v) : v;
}

// Exact decimal expansion: "1.25e-3" -> 125/100000.
inline Rational parse_decimal(std::string_view s, std::string_view whole) {
    int exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        Integer ex = parse_integer(s.substr(e + 1), whole);
        if (ex > 4000 || ex < -4000) throw ParseError("exponent out of range in '" + std::string(whole) + "'");
        exponent = ex.convert_to<int>();
        s = s.substr(0, e);
    }
    std::string digits;
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    bool seen_point = false;
    for (char c : s) {
        if (c == '.') {
            if (seen_point) throw ParseError("malformed number '" + std::string(whole) + "'");
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) --exponent;
        } else {
            throw ParseError("malformed number '" + std::string(whole) + "'");
        }
    }
    if (digits.empty()) throw ParseError("malformed number '" + std::string(whole) + "'");
    Rational v(parse_integer(digits, whole));
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    v = exponent < 0 ? v / Rational(scale) : v * Rational(scale);
    return neg ? Rational(-v) : v;
}

}  // namespace detail

/// Parses "p", "p/q" or an exact decimal ("1.5", "-2e-3"). No floating
/// point is involved.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer num = detail::parse_integer(detail::trim(s.substr(0, slash)), text);
        Integer den = detail::parse_integer(detail::trim(s.substr(slash + 1)), text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return make_rational(num, den);
    }
    return detail::parse_decimal(s, text);
}

}  // namespace toda
