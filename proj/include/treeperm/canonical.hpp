#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

#include "treeperm/tree.hpp"

namespace treeperm {

// Isomorphism-invariant encoding of a tree: the AHU balanced-parenthesis
// string of the tree rooted at its center, taking the lexicographically
// smaller string when the center is an edge. Equal codes iff isomorphic.
struct CanonicalCode {
    std::string parens;

    auto operator<=>(const CanonicalCode&) const = default;
    const std::string& str() const { return parens; }
};

// The 1 or 2 middle vertices of a longest path, found by peeling leaf layers.
inline std::vector<int> tree_centers(const Tree& t) {
    const int n = t.n();
    if (n == 2) return {0, 1};
    std::vector<int> deg = t.degrees();
    std::vector<int> layer;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) layer.push_back(v);
    int remaining = n;
    while (remaining > 2) {
        remaining -= static_cast<int>(layer.size());
        std::vector<int> next;
        for (int v : layer) {
            deg[v] = 0;
            for (int w : t.neighbors(v))
                if (deg[w] > 0 && --deg[w] == 1) next.push_back(w);
        }
        layer.swap(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

// Canonical AHU string of the tree rooted at `root`: each vertex encodes as
// "(" + its children's codes in sorted order + ")". Iterative so path-like
// trees with thousands of vertices cannot overflow the call stack.
inline std::string ahu_string(const Tree& t, int root) {
    const int n = t.n();
    std::vector<int> parent(n, -1), order;
    order.reserve(n);
    order.push_back(root);
    parent[root] = root;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        for (int w : t.neighbors(v))
            if (parent[w] == -1) {
                parent[w] = v;
                order.push_back(w);
            }
    }
    std::vector<std::string> code(n);
    std::vector<std::vector<std::string>> child_codes(n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        auto& kids = child_codes[v];
        std::sort(kids.begin(), kids.end());
        std::string s = "(";
        for (auto& k : kids) s += k;
        s += ')';
        kids.clear();
        kids.shrink_to_fit();
        if (v == root) return s;
        child_codes[parent[v]].push_back(std::move(s));
    }
    return "()";  // unreachable for n >= 1
}

inline CanonicalCode canonical_code(const Tree& t) {
    std::vector<int> centers = tree_centers(t);
    std::string best = ahu_string(t, centers[0]);
    if (centers.size() == 2) {
        std::string other = ahu_string(t, centers[1]);
        if (other < best) best = std::move(other);
    }
    return CanonicalCode{std::move(best)};
}

inline bool isomorphic(const Tree& a, const Tree& b) {
    return a.n() == b.n() && canonical_code(a) == canonical_code(b);
}

// Rebuilds the tree a canonical code describes; labels follow the code's
// preorder. Round-trips: canonical_code(tree_from_code(c)) == c.
inline Tree tree_from_code(const CanonicalCode& code) {
    const std::string& s = code.parens;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> stack;
    int next = 0;
    for (char c : s) {
        if (c == '(') {
            if (!stack.empty()) edges.emplace_back(stack.back(), next);
            stack.push_back(next++);
        } else {
            stack.pop_back();
        }
    }
    return Tree(next, std::move(edges));
}

}  // namespace treeperm
