#pragma once

#include <vector>

#include "treeperm/numerics.hpp"
#include "treeperm/tree.hpp"

namespace treeperm {

namespace detail {

// Rooted orientation of a tree: BFS preorder from vertex 0, so every child
// appears after its parent. Built iteratively; no recursion anywhere in the
// DP, so path-like trees with thousands of vertices are fine.
struct Rooting {
    std::vector<int> order;   // BFS order, order[0] == 0
    std::vector<int> parent;  // parent[0] == -1

    explicit Rooting(const Tree& t) {
        const int n = t.n();
        parent.assign(n, -1);
        order.reserve(n);
        order.push_back(0);
        parent[0] = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (int w : t.neighbors(order[i]))
                if (parent[w] == -1) {
                    parent[w] = order[i];
                    order.push_back(w);
                }
        parent[0] = -1;
    }
};

// The matching-sum DP over an arbitrary commutative semiring of values.
//
// For vertex v with children c_1..c_k:
//   free(v) = prod_i any(c_i)                         (v unmatched in its subtree)
//   any(v)  = w_vertex(v) * free(v)
//           + sum_i w_edge(v,c_i) * free(c_i) * prod_{j != i} any(c_j)
// and the result is any(root). The sum-of-products over children is folded
// in one pass per child (S <- S*any + w_edge*free*P; P <- P*any), which keeps
// the whole run at O(n) multiplications without dividing.
//
// w_vertex(v) = 1 and w_edge(u,v) = 1/(d(u)d(v)) yields the Laplacian ratio;
// w_vertex(v) = d(v) and w_edge = 1 yields per(L(T)) directly.
template <class Value, class VertexWeight, class EdgeWeight>
Value matching_dp(const Tree& t, VertexWeight&& w_vertex, EdgeWeight&& w_edge) {
    const Rooting r(t);
    const int n = t.n();
    std::vector<Value> prod(n, Value(1)), sum(n, Value(0));
    for (int i = n - 1; i >= 1; --i) {
        const int v = r.order[i];
        const int p = r.parent[v];
        const Value any_v = w_vertex(v) * prod[v] + sum[v];
        sum[p] = sum[p] * any_v + w_edge(p, v) * prod[v] * prod[p];
        prod[p] *= any_v;
    }
    return w_vertex(0) * prod[0] + sum[0];
}

}  // namespace detail

inline BigInt degree_product(const Tree& t) {
    BigInt d = 1;
    for (int v = 0; v < t.n(); ++v) d *= t.degree(v);
    return d;
}

// pi(T) = sum over matchings M of prod_{uv in M} 1/(d(u)d(v)), computed in
// O(n) exact rational operations.
inline Rational pi(const Tree& t) {
    return detail::matching_dp<Rational>(
        t, [](int) { return Rational(1); },
        [&t](int u, int v) {
            return Rational(1, static_cast<long long>(t.degree(u)) * t.degree(v));
        });
}

// per(L(T)) by the same DP over integers, weighting uncovered vertices by
// their degrees. Equals pi(t) * degree_product(t) exactly.
inline BigInt per_laplacian_dp(const Tree& t) {
    return detail::matching_dp<BigInt>(
        t, [&t](int v) { return BigInt(t.degree(v)); }, [](int, int) { return BigInt(1); });
}

// pi from an already-computed permanent: per / prod_v d(v), normalized.
inline Rational pi_from_per(const BigInt& per, const Tree& t) {
    if (per < 0) throw DomainError("permanent of a tree Laplacian cannot be negative");
    return Rational(per, degree_product(t));
}

}  // namespace treeperm
