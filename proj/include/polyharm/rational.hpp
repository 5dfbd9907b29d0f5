#pragma once

// Exact rational scalars. All identity-level checks in this library are carried
// out over arbitrary-precision rationals; doubles appear only at evaluation
// boundaries (quadrature, kernels, CLI output).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyharm {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, kept in canonical form (reduced, positive
/// denominator, zero stored as 0/1) by the backend.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(BigInt num, BigInt den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

inline Rational rat(long long num, long long den = 1) {
    return make_rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

/// q^k for integer k; negative k requires q != 0.
inline Rational rational_pow(const Rational& q, long k) {
    if (k < 0) {
        if (q == 0) throw std::domain_error("rational_pow: 0 to a negative power");
        return 1 / rational_pow(q, -k);
    }
    Rational acc = 1, base = q;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

/// Ascending factorial (a)_k = a (a+1) ... (a+k-1), (a)_0 = 1, exact.
inline Rational pochhammer_rational(const Rational& a, unsigned k) {
    Rational acc = 1;
    for (unsigned i = 0; i < k; ++i) acc *= a + int(i);
    return acc;
}

inline Rational binomial_rational(unsigned n, unsigned k) {
    if (k > n) return 0;
    Rational acc = 1;
    for (unsigned i = 0; i < k; ++i) acc = acc * int(n - i) / int(i + 1);
    return acc;
}

namespace detail {

/// Decimal integer parse; avoids cpp_int's base-prefix rules (a leading zero
/// must not mean octal here).
inline BigInt parse_decimal_int(std::string text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty integer");
    bool negative = false;
    size_t pos = 0;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        pos = 1;
    }
    if (pos == text.size()) throw std::invalid_argument("parse_rational: sign without digits");
    BigInt v = 0;
    for (; pos < text.size(); ++pos) {
        char ch = text[pos];
        if (ch < '0' || ch > '9') throw std::invalid_argument("parse_rational: invalid digit");
        v = v * 10 + (ch - '0');
    }
    return negative ? -v : v;
}

}  // namespace detail

/// Parses "7", "-3/4" or a decimal string such as "0.125" (converted exactly
/// with a power-of-ten denominator).
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        return make_rational(detail::parse_decimal_int(text.substr(0, slash)),
                             detail::parse_decimal_int(text.substr(slash + 1)));
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(detail::parse_decimal_int(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0) return Rational(detail::parse_decimal_int(text.substr(0, dot)));
    BigInt den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return make_rational(detail::parse_decimal_int(digits), den);
}

inline std::string rational_to_string(const Rational& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace polyharm
