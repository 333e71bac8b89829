#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "treeperm/errors.hpp"

namespace treeperm {

// Exact arbitrary-precision arithmetic. boost::multiprecision does the limb
// work; cpp_rational keeps every value normalized (den > 0, gcd(|num|,den) = 1)
// on construction and after each operation, so equality is structural.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline BigInt int_pow(const BigInt& base, unsigned e) {
    return boost::multiprecision::pow(base, e);
}

// Exact e-th power of a rational, e >= 0. A normalized fraction stays
// normalized under coordinate-wise powers.
inline Rational rat_pow(const Rational& base, unsigned e) {
    if (e == 0) return Rational(1);
    return Rational(int_pow(numerator(base), e), int_pow(denominator(base), e));
}

inline Rational three_halves() { return Rational(3, 2); }

// (3/2)^e for any integer e, negative exponents included. Only the bound
// formulas need e < 0 (orders below 6 in the even cases).
inline Rational three_halves_pow(long long e) {
    if (e >= 0) return rat_pow(three_halves(), static_cast<unsigned>(e));
    return rat_pow(Rational(2, 3), static_cast<unsigned>(-e));
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// "num/den" with den omitted when it is 1.
inline std::string rat_str(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

inline Rational parse_rational(std::string_view s) {
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t num_begin = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i == num_begin) throw ParseError("expected integer numerator", i);
    BigInt num(std::string(s.substr(0, i)));
    if (i == s.size()) return Rational(num);
    if (s[i] != '/') throw ParseError("expected '/' after numerator", i);
    ++i;
    std::size_t den_begin = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i == den_begin) throw ParseError("expected integer denominator", den_begin);
    if (i != s.size()) throw ParseError("trailing characters after denominator", i);
    BigInt den(std::string(s.substr(den_begin)));
    if (den == 0) throw ParseError("denominator is zero", den_begin);
    return Rational(num, den);
}

// Reporting form c * (3/2)^e. Internal computation never uses this; it only
// exists so results print the way the closed forms are usually written.
struct FactoredValue {
    Rational coeff;
    unsigned exp = 0;

    Rational value() const { return coeff * three_halves_pow(exp); }

    std::string str() const {
        return rat_str(coeff) + " * (3/2)^" + std::to_string(exp);
    }

    friend bool operator==(const FactoredValue&, const FactoredValue&) = default;
};

// Exact division by (3/2)^exp; expanding the result recovers v bit for bit.
inline FactoredValue to_factored(const Rational& v, unsigned exp) {
    return FactoredValue{v * three_halves_pow(-static_cast<long long>(exp)), exp};
}

// Picks the exponent that lands the coefficient in [2, 3), the window every
// Laplacian ratio of a tree starts from (pi >= 2). Values below 2 keep exp 0.
inline FactoredValue auto_factored(const Rational& v) {
    if (v < 2) return FactoredValue{v, 0};
    unsigned e = 0;
    Rational c = v;
    while (c >= 3) {
        c = c * Rational(2, 3);
        ++e;
    }
    return FactoredValue{c, e};
}

// q(s) = p(s + shift) by exact binomial expansion; coefficients in ascending
// degree order. Works for negative shifts, which makes the transform
// invertible in tests.
inline std::vector<BigInt> poly_shift(const std::vector<BigInt>& p, long long shift) {
    const std::size_t d = p.size();
    if (d == 0) return {};
    // Pascal's triangle up to degree d-1.
    std::vector<std::vector<BigInt>> binom(d);
    for (std::size_t i = 0; i < d; ++i) {
        binom[i].assign(i + 1, BigInt(1));
        for (std::size_t j = 1; j < i; ++j) binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
    }
    std::vector<BigInt> shift_pow(d);
    shift_pow[0] = 1;
    for (std::size_t k = 1; k < d; ++k) shift_pow[k] = shift_pow[k - 1] * shift;
    std::vector<BigInt> q(d, BigInt(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j <= i; ++j) q[j] += binom[i][j] * shift_pow[i - j] * p[i];
    return q;
}

inline BigInt poly_eval(const std::vector<BigInt>& p, const BigInt& x) {
    BigInt acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace treeperm
