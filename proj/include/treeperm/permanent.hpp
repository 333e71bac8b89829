#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "treeperm/config.hpp"
#include "treeperm/errors.hpp"
#include "treeperm/numerics.hpp"
#include "treeperm/tree.hpp"

namespace treeperm {

// Dense square matrix of exact integers. Laplacians are the main tenant but
// the permanent routines accept anything square.
class IntMatrix {
public:
    explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, BigInt(0)) {
        if (n < 1) throw DomainError("matrix order must be positive");
    }

    int n() const { return n_; }
    BigInt& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const BigInt& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    // JSON array-of-arrays of decimal strings; entries may exceed 64 bits.
    std::string json() const {
        std::string out = "[";
        for (int i = 0; i < n_; ++i) {
            out += i ? ",[" : "[";
            for (int j = 0; j < n_; ++j) {
                if (j) out += ',';
                out += '"';
                out += at(i, j).str();
                out += '"';
            }
            out += ']';
        }
        out += ']';
        return out;
    }

private:
    int n_;
    std::vector<BigInt> a_;
};

// L(T) = D(T) - A(T): degrees on the diagonal, -1 at adjacent pairs.
inline IntMatrix laplacian(const Tree& t) {
    IntMatrix m(t.n());
    for (int v = 0; v < t.n(); ++v) m.at(v, v) = t.degree(v);
    for (auto [u, v] : t.edges()) {
        m.at(u, v) = -1;
        m.at(v, u) = -1;
    }
    return m;
}

namespace detail {

// Ryser evaluated over a fixed signed integer type. Caller guarantees no
// intermediate can overflow (see permanent_ryser's bound check).
inline __int128 ryser_int(const std::vector<std::int64_t>& a, int n) {
    std::vector<std::int64_t> row_sum(n, 0);
    __int128 acc = 0;
    const std::uint64_t count = std::uint64_t{1} << n;
    int parity = 0;  // popcount of the current Gray code, mod 2
    for (std::uint64_t k = 1; k < count; ++k) {
        const int j = std::countr_zero(k);
        const std::uint64_t gray = k ^ (k >> 1);
        if (gray & (std::uint64_t{1} << j))
            for (int i = 0; i < n; ++i) row_sum[i] += a[static_cast<std::size_t>(i) * n + j];
        else
            for (int i = 0; i < n; ++i) row_sum[i] -= a[static_cast<std::size_t>(i) * n + j];
        parity ^= 1;
        __int128 prod = 1;
        for (int i = 0; i < n; ++i) prod *= row_sum[i];
        acc += parity ? -prod : prod;
    }
    return (n & 1) ? -acc : acc;
}

inline BigInt ryser_big(const IntMatrix& m) {
    const int n = m.n();
    std::vector<BigInt> row_sum(n, BigInt(0));
    BigInt acc = 0, prod;
    const std::uint64_t count = std::uint64_t{1} << n;
    int parity = 0;
    for (std::uint64_t k = 1; k < count; ++k) {
        const int j = std::countr_zero(k);
        const std::uint64_t gray = k ^ (k >> 1);
        if (gray & (std::uint64_t{1} << j))
            for (int i = 0; i < n; ++i) row_sum[i] += m.at(i, j);
        else
            for (int i = 0; i < n; ++i) row_sum[i] -= m.at(i, j);
        parity ^= 1;
        prod = row_sum[0];
        for (int i = 1; i < n && prod != 0; ++i) prod *= row_sum[i];
        if (parity)
            acc -= prod;
        else
            acc += prod;
    }
    return (n & 1) ? BigInt(-acc) : acc;
}

inline BigInt int128_to_big(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt out = static_cast<std::uint64_t>(mag >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(mag);
    return neg ? BigInt(-out) : out;
}

}  // namespace detail

// Exact permanent by Ryser's inclusion-exclusion over column subsets, with
// Gray-code row-sum updates: O(2^n * n). Every |subset product| is bounded by
// prod_i max(1, sum_j |a_ij|) and the accumulator by 2^n times that, so when
// those bounds fit in 128 bits the whole run stays in machine words;
// otherwise it falls back to big integers. Both paths are exact.
inline BigInt permanent_ryser(const IntMatrix& m, int cap = caps::ryser()) {
    const int n = m.n();
    if (n > cap || n > 62)
        throw CapacityError("permanent_ryser: order " + std::to_string(n) + " exceeds cap " +
                            std::to_string(std::min(cap, 62)));
    BigInt product_bound = 1;
    bool entries_fit = true;
    for (int i = 0; i < n && entries_fit; ++i) {
        BigInt row_abs = 0;
        for (int j = 0; j < n; ++j) {
            row_abs += abs(m.at(i, j));
            if (abs(m.at(i, j)) >= (BigInt(1) << 62)) entries_fit = false;
        }
        if (row_abs > 1) product_bound *= row_abs;
    }
    if (entries_fit && boost::multiprecision::msb(product_bound + 1) + n <= 120) {
        std::vector<std::int64_t> a(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a[static_cast<std::size_t>(i) * n + j] = m.at(i, j).convert_to<std::int64_t>();
        return detail::int128_to_big(detail::ryser_int(a, n));
    }
    return detail::ryser_big(m);
}

// Direct sum over all n! permutations. The reference everything else is
// checked against for tiny orders.
inline BigInt permanent_naive(const IntMatrix& m, int cap = caps::naive()) {
    const int n = m.n();
    if (n > cap)
        throw CapacityError("permanent_naive: order " + std::to_string(n) + " exceeds cap " +
                            std::to_string(cap));
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    BigInt total = 0;
    do {
        BigInt term = 1;
        for (int i = 0; i < n && term != 0; ++i) term *= m.at(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// Visits every matching of t (the empty one included) exactly once, in
// lexicographic order of sorted edge-index lists. The visitor receives the
// current matching as a span of edge indices into t.edges().
template <class Visitor>
void for_each_matching(const Tree& t, Visitor&& visit, int cap = caps::matchings()) {
    if (t.n() > cap || t.n() > 62)
        throw CapacityError("matching enumeration: order " + std::to_string(t.n()) +
                            " exceeds cap " + std::to_string(std::min(cap, 62)));
    const auto& edges = t.edges();
    const int m = static_cast<int>(edges.size());
    std::vector<int> chosen;
    std::uint64_t covered = 0;
    auto rec = [&](auto&& self, int from) -> void {
        visit(static_cast<const std::vector<int>&>(chosen));
        for (int e = from; e < m; ++e) {
            std::uint64_t mask =
                (std::uint64_t{1} << edges[e].first) | (std::uint64_t{1} << edges[e].second);
            if (covered & mask) continue;
            covered |= mask;
            chosen.push_back(e);
            self(self, e + 1);
            chosen.pop_back();
            covered &= ~mask;
        }
    };
    rec(rec, 0);
}

inline std::vector<std::vector<int>> enumerate_matchings(const Tree& t, int cap = caps::matchings()) {
    std::vector<std::vector<int>> out;
    for_each_matching(t, [&](const std::vector<int>& matching) { out.push_back(matching); }, cap);
    return out;
}

// per(L(T)) as the matching sum: over every matching, the product of degrees
// of uncovered vertices. Independent of both Ryser and the production DP.
inline BigInt permanent_by_matchings(const Tree& t, int cap = caps::matchings()) {
    const int n = t.n();
    BigInt total = 0;
    for_each_matching(
        t,
        [&](const std::vector<int>& matching) {
            std::uint64_t covered = 0;
            for (int e : matching)
                covered |= (std::uint64_t{1} << t.edges()[e].first) |
                           (std::uint64_t{1} << t.edges()[e].second);
            BigInt term = 1;
            for (int v = 0; v < n; ++v)
                if (!(covered & (std::uint64_t{1} << v))) term *= t.degree(v);
            total += term;
        },
        cap);
    return total;
}

}  // namespace treeperm
