#pragma once

#include <vector>

#include "treeperm/numerics.hpp"
#include "treeperm/tree.hpp"

namespace treeperm {

// Core-path degrees of T(a_1,...,a_m): a_i+1 at the path ends, a_i+2 inside.
// With a single core vertex the degree is just a_1.
inline std::vector<int> core_degrees(const FamilySpec& spec) {
    spec.validate();
    const int m = spec.m();
    std::vector<int> d(m);
    if (m == 1) {
        d[0] = spec.a[0];
        return d;
    }
    for (int i = 0; i < m; ++i) d[i] = spec.a[i] + ((i == 0 || i == m - 1) ? 1 : 2);
    return d;
}

// Everything the two-term recurrence produces for one spec, kept together so
// callers can inspect the intermediate f_i values.
struct FamilyEval {
    FamilySpec spec;
    std::vector<int> core_deg;
    std::vector<Rational> f;  // f[0..m]
    Rational pi;
    FactoredValue factored;  // coeff = f_m, exp = a_1+...+a_m
};

// pi(T(a_1,...,a_m)) = (3/2)^{a_1+...+a_m} * f_m where f_0 = 1,
// f_1 = 1 + a_1/(3 d_1) and
// f_i = (1 + a_i/(3 d_i)) f_{i-1} + f_{i-2}/(d_{i-1} d_i).
// The closed forms pi_A/pi_B/pi_C below are validated against this.
inline FamilyEval family_pi(const FamilySpec& spec) {
    FamilyEval out{spec, core_degrees(spec), {}, Rational(0), {}};
    const int m = spec.m();
    const auto& a = spec.a;
    const auto& d = out.core_deg;
    out.f.reserve(m + 1);
    out.f.push_back(Rational(1));
    out.f.push_back(Rational(1) + Rational(a[0], 3LL * d[0]));
    for (int i = 2; i <= m; ++i) {
        Rational fi = (Rational(1) + Rational(a[i - 1], 3LL * d[i - 1])) * out.f[i - 1] +
                      Rational(1, static_cast<long long>(d[i - 2]) * d[i - 1]) * out.f[i - 2];
        out.f.push_back(std::move(fi));
    }
    const unsigned total = static_cast<unsigned>(spec.attachment_total());
    out.pi = rat_pow(three_halves(), total) * out.f[m];
    out.factored = FactoredValue{out.f[m], total};
    return out;
}

// pi(A_t) for A_t = T(3,t,3), t >= 3; order 2t+15.
inline Rational pi_A(long long t) {
    if (t < 3) throw DomainError("pi_A needs t >= 3");
    return three_halves_pow(t + 6) * Rational(5 * (5 * t + 9), 12 * (t + 2));
}

// pi(B_t) for B_t = T(t,t,t,t), t >= 1; order 8t+4.
inline Rational pi_B(long long t) {
    if (t < 1) throw DomainError("pi_B needs t >= 1");
    const BigInt tt(t);
    const BigInt num = 2 * poly_eval({BigInt(405), BigInt(1080), BigInt(1152), BigInt(576), BigInt(128)}, tt);
    const BigInt den = 81 * (tt + 1) * (tt + 1) * (tt + 2) * (tt + 2);
    return three_halves_pow(4 * t) * Rational(num, den);
}

// pi(C_t) for C_t = T(t,t,t+1,t), t >= 1; order 8t+6.
inline Rational pi_C(long long t) {
    if (t < 1) throw DomainError("pi_C needs t >= 1");
    const BigInt tt(t);
    const BigInt num = 2 * poly_eval({BigInt(567), BigInt(1512), BigInt(1536), BigInt(704), BigInt(128)}, tt);
    const BigInt den = 81 * (tt + 1) * (tt + 1) * (tt + 2) * (tt + 3);
    return three_halves_pow(4 * t + 1) * Rational(num, den);
}

inline FamilySpec family_A(int t) { return FamilySpec({3, t, 3}); }
inline FamilySpec family_B(int t) { return FamilySpec({t, t, t, t}); }
inline FamilySpec family_C(int t) { return FamilySpec({t, t, t + 1, t}); }

}  // namespace treeperm
