#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "treeperm/numerics.hpp"
#include "treeperm/ratio.hpp"
#include "treeperm/tree.hpp"

namespace treeperm {

enum class BoundCase { odd, mod4_0, mod4_2 };

inline const char* bound_case_name(BoundCase c) {
    switch (c) {
        case BoundCase::odd: return "odd";
        case BoundCase::mod4_0: return "4k";
        default: return "4k+2";
    }
}

inline BoundCase bound_case(int n) {
    if (n < 3) throw DomainError("conjectured bound needs n >= 3");
    if (n % 2 == 1) return BoundCase::odd;
    return n % 4 == 0 ? BoundCase::mod4_0 : BoundCase::mod4_2;
}

// Exponent of the (3/2) power in each case's bound formula. Negative for
// n = 4 (the even formulas evaluate fine there; only tree construction has
// the stricter floor).
inline long long bound_exponent(int n) {
    return bound_case(n) == BoundCase::odd ? (n - 3) / 2 : (n - 6) / 2;
}

// The conjectured maximum of pi over n-vertex trees:
//   n odd:      2 (3/2)^{(n-3)/2}
//   n = 4k:     (4n^2+8n+24)/(n(n+4))  (3/2)^{(n-6)/2}
//   n = 4k+2:   (4n^2+8n+40)/(n+2)^2   (3/2)^{(n-6)/2}
inline Rational conjectured_bound(int n) {
    const long long nn = n;
    switch (bound_case(n)) {
        case BoundCase::odd:
            return 2 * three_halves_pow(bound_exponent(n));
        case BoundCase::mod4_0:
            return Rational(4 * nn * nn + 8 * nn + 24, nn * (nn + 4)) *
                   three_halves_pow(bound_exponent(n));
        default:
            return Rational(4 * nn * nn + 8 * nn + 40, (nn + 2) * (nn + 2)) *
                   three_halves_pow(bound_exponent(n));
    }
}

// Spec string of the tree the conjecture names as the equality case.
inline std::string conjectured_extremal_spec(int n) {
    switch (bound_case(n)) {
        case BoundCase::odd:
            return "S:" + std::to_string(n) + "," + std::to_string((n - 1) / 2);
        case BoundCase::mod4_0:
            if (n < 8) throw DomainError("S(n,(n+2)/2,(n-2)/2) needs n >= 8");
            return "S:" + std::to_string(n) + "," + std::to_string((n + 2) / 2) + "," +
                   std::to_string((n - 2) / 2);
        default:
            if (n < 6) throw DomainError("S(n,n/2,n/2) needs n >= 6");
            return "S:" + std::to_string(n) + "," + std::to_string(n / 2) + "," +
                   std::to_string(n / 2);
    }
}

inline Tree conjectured_extremal_tree(int n) {
    switch (bound_case(n)) {
        case BoundCase::odd:
            return build_spider(n);
        case BoundCase::mod4_0:
            if (n < 8) throw DomainError("S(n,(n+2)/2,(n-2)/2) needs n >= 8");
            return build_double_spider(n, (n + 2) / 2, (n - 2) / 2);
        default:
            if (n < 6) throw DomainError("S(n,n/2,n/2) needs n >= 6");
            return build_double_spider(n, n / 2, n / 2);
    }
}

enum class Verdict { below, equal, above };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::below: return "below";
        case Verdict::equal: return "equal";
        default: return "above";
    }
}

// One tree measured against its case's bound. All fields exact; the factored
// forms share the case's (3/2) exponent (clamped at zero for n < 6).
struct BoundReport {
    int n = 0;
    BoundCase bcase = BoundCase::odd;
    Rational pi;
    Rational bound;
    Rational difference;  // pi - bound
    Verdict verdict = Verdict::below;
    FactoredValue pi_factored, bound_factored, difference_factored;
    std::string tree_spec;
};

inline BoundReport evaluate_tree(const Tree& t, std::string tree_spec = "") {
    BoundReport r;
    r.n = t.n();
    r.bcase = bound_case(r.n);
    r.pi = pi(t);
    r.bound = conjectured_bound(r.n);
    r.difference = r.pi - r.bound;
    r.verdict = r.difference > 0   ? Verdict::above
                : r.difference < 0 ? Verdict::below
                                   : Verdict::equal;
    const unsigned exp = static_cast<unsigned>(std::max(bound_exponent(r.n), 0LL));
    r.pi_factored = to_factored(r.pi, exp);
    r.bound_factored = to_factored(r.bound, exp);
    r.difference_factored = to_factored(r.difference, exp);
    r.tree_spec = std::move(tree_spec);
    return r;
}

inline std::string bound_report_csv_header() {
    return "n,case,pi,bound,difference,verdict,tree_spec";
}

inline std::string bound_report_csv_row(const BoundReport& r) {
    return std::to_string(r.n) + "," + bound_case_name(r.bcase) + "," + rat_str(r.pi) + "," +
           rat_str(r.bound) + "," + rat_str(r.difference) + "," + verdict_name(r.verdict) + "," +
           r.tree_spec;
}

// pi(A_t) - bound(2t+15) = (3/2)^{t+6} (t-3) / (12(t+2)); zero exactly at
// t = 3, positive for t >= 4.
inline Rational delta_A(long long t) {
    if (t < 3) throw DomainError("delta_A needs t >= 3");
    return three_halves_pow(t + 6) * Rational(t - 3, 12 * (t + 2));
}

// pi(B_t) - bound(8t+4) = (3/2)^{4t} t^2 (160t^3-280t^2-1197t-873)
//                         / (162 (t+1)^2 (t+2)^2 (2t+1)).
inline Rational delta_B(long long t) {
    if (t < 1) throw DomainError("delta_B needs t >= 1");
    const BigInt tt(t);
    const BigInt num =
        tt * tt * poly_eval({BigInt(-873), BigInt(-1197), BigInt(-280), BigInt(160)}, tt);
    const BigInt den = 162 * (tt + 1) * (tt + 1) * (tt + 2) * (tt + 2) * (2 * tt + 1);
    return three_halves_pow(4 * t) * Rational(num, den);
}

// pi(C_t) - bound(8t+6) = (3/2)^{4t} (160t^4-200t^3-1239t^2-891t-162)
//                         / (216 (t+1)^2 (t+2) (t+3)).
inline Rational delta_C(long long t) {
    if (t < 1) throw DomainError("delta_C needs t >= 1");
    const BigInt tt(t);
    const BigInt num =
        poly_eval({BigInt(-162), BigInt(-891), BigInt(-1239), BigInt(-200), BigInt(160)}, tt);
    const BigInt den = 216 * (tt + 1) * (tt + 1) * (tt + 2) * (tt + 3);
    return three_halves_pow(4 * t) * Rational(num, den);
}

// per(L(P_n)) by the integer recurrence p_2 = 2, p_3 = 4,
// p_n = 2 p_{n-1} + p_{n-2} (characteristic roots 1 +- sqrt(2) of the
// closed form below); validated against Ryser in the tests.
inline BigInt path_permanent(int n) {
    if (n < 2) throw DomainError("path permanent needs n >= 2");
    BigInt prev = 2, cur = 4;  // p_2, p_3
    if (n == 2) return prev;
    for (int k = 4; k <= n; ++k) {
        BigInt next = 2 * cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// Floating evaluation of
//   per(L(P_n)) = (1 - sqrt(2)/2)(1+sqrt(2))^n + (1 + sqrt(2)/2)(1-sqrt(2))^n.
// Exists only to validate the display formula; every verdict in this module
// uses exact rationals.
inline double path_permanent_closed_form(int n) {
    if (n < 2) throw DomainError("path permanent needs n >= 2");
    const double r = std::sqrt(2.0);
    return (1 - r / 2) * std::pow(1 + r, n) + (1 + r / 2) * std::pow(1 - r, n);
}

}  // namespace treeperm
