#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "swcalc/errors.hpp"

namespace swcalc {

// Expression templates are disabled so that arithmetic results are plain values.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool isInteger(const Rational& q) { return denominator(q) == 1; }

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Integer& z) { return z.sign(); }
inline int sign(std::int64_t v) { return (v > 0) - (v < 0); }

/// Floor division for signed 64-bit integers (rounds toward negative infinity).
inline std::int64_t floorDiv(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Mathematical modulus, result in [0, |b|).
inline std::int64_t floorMod(std::int64_t a, std::int64_t b) {
    std::int64_t r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r < 0 ? r + (b < 0 ? -b : b) : r;
}

inline Integer floor(const Rational& q) {
    Integer n = numerator(q), d = denominator(q);
    Integer r = n / d;
    if (n % d != 0 && n < 0) r -= 1;
    return r;
}

/// Renders "p" for integers, "p/q" otherwise.
inline std::string toString(const Rational& q) {
    if (isInteger(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string toString(const Integer& z) { return z.str(); }

/// Parses "p", "-p" or "p/q" exactly. Throws ValidationError on malformed input.
inline Rational parseRational(std::string_view text) {
    auto parseInt = [&](std::string_view s) -> Integer {
        if (s.empty()) throw ValidationError("malformed rational '" + std::string(text) + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw ValidationError("malformed rational '" + std::string(text) + "'");
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9')
                throw ValidationError("malformed rational '" + std::string(text) + "'");
        return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parseInt(text));
    Integer num = parseInt(text.substr(0, slash));
    Integer den = parseInt(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

/// Converts to int64, throwing if the value does not fit or is not integral.
inline std::int64_t toInt64(const Rational& q) {
    if (!isInteger(q)) throw DomainError("expected an integer, got " + toString(q));
    Integer n = numerator(q);
    if (n > Integer(INT64_MAX) || n < Integer(INT64_MIN)) throw DomainError("integer overflow");
    return static_cast<std::int64_t>(n);
}

inline std::int64_t toInt64(const Integer& n) {
    if (n > Integer(INT64_MAX) || n < Integer(INT64_MIN)) throw DomainError("integer overflow");
    return static_cast<std::int64_t>(n);
}

}  // namespace swcalc
