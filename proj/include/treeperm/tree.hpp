#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treeperm/errors.hpp"

namespace treeperm {

// A tree on n >= 2 vertices labelled 0..n-1. Construction validates the
// whole invariant set (edge count, no loops or parallel edges, connectivity),
// so holding a Tree means holding a tree. Immutable afterwards.
class Tree {
public:
    Tree(int n, std::vector<std::pair<int, int>> edges) : n_(n), edges_(std::move(edges)) {
        if (n_ < 2) throw DomainError("tree needs at least 2 vertices, got " + std::to_string(n_));
        if (static_cast<int>(edges_.size()) != n_ - 1)
            throw DomainError("tree on " + std::to_string(n_) + " vertices needs " +
                              std::to_string(n_ - 1) + " edges, got " + std::to_string(edges_.size()));
        adj_.assign(n_, {});
        degree_.assign(n_, 0);
        for (auto& [u, v] : edges_) {
            if (u < 0 || u >= n_ || v < 0 || v >= n_)
                throw DomainError("edge endpoint out of range");
            if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
            if (u > v) std::swap(u, v);
            adj_[u].push_back(v);
            adj_[v].push_back(u);
            ++degree_[u];
            ++degree_[v];
        }
        // n-1 edges + connected == tree; a repeated edge would disconnect
        // some other vertex, so the reachability check covers that too.
        std::vector<char> seen(n_, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj_[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached != n_) throw DomainError("edge list does not form a connected tree");
    }

    int n() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return degree_[v]; }
    const std::vector<int>& degrees() const { return degree_; }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> degree_;
};

// The tuple (a_1,...,a_m): a core path on m vertices with a_i pendant paths
// of length two attached to core vertex i. m = 1 is allowed with a_1 >= 1;
// the lone core vertex then has degree a_1 and the subdivided star S(n,(n-1)/2)
// becomes the m = 1 member.
struct FamilySpec {
    std::vector<int> a;

    explicit FamilySpec(std::vector<int> counts) : a(std::move(counts)) { validate(); }

    int m() const { return static_cast<int>(a.size()); }
    int attachment_total() const { return std::accumulate(a.begin(), a.end(), 0); }
    int vertex_count() const { return m() + 2 * attachment_total(); }

    void validate() const {
        if (a.empty()) throw DomainError("family spec needs at least one core vertex");
        for (int ai : a)
            if (ai < 0) throw DomainError("family spec entries must be non-negative");
        if (a.size() == 1 && a[0] < 1)
            throw DomainError("single-core family needs a_1 >= 1");
    }

    std::string str() const {
        std::string s = "T:";
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(a[i]);
        }
        return s;
    }
};

// P_n, degree sequence 1,2,...,2,1.
inline Tree build_path(int n) {
    if (n < 2) throw DomainError("path needs n >= 2, got " + std::to_string(n));
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Tree(n, std::move(edges));
}

// K_{1,n-1}: center 0, leaves 1..n-1.
inline Tree build_star(int n) {
    if (n < 2) throw DomainError("star needs n >= 2, got " + std::to_string(n));
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
    return Tree(n, std::move(edges));
}

// T(a_1,...,a_m). Labelling is fixed: core path is 0..m-1, then for each core
// vertex in order its pendant pairs (mid, leaf), so tests can address
// vertices deterministically.
inline Tree build_family(const FamilySpec& spec) {
    spec.validate();
    const int m = spec.m();
    std::vector<std::pair<int, int>> edges;
    edges.reserve(spec.vertex_count() - 1);
    for (int i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);
    int next = m;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < spec.a[i]; ++k) {
            int mid = next++;
            int leaf = next++;
            edges.emplace_back(i, mid);
            edges.emplace_back(mid, leaf);
        }
    return Tree(spec.vertex_count(), std::move(edges));
}

// S(n,(n-1)/2): the star on (n+1)/2 vertices with every edge subdivided,
// i.e. the single-core family T((n-1)/2).
inline Tree build_spider(int n) {
    if (n < 3) throw DomainError("spider needs n >= 3, got " + std::to_string(n));
    if (n % 2 == 0) throw DomainError("spider order must be odd, got " + std::to_string(n));
    return build_family(FamilySpec({(n - 1) / 2}));
}

// S(n,a,b): two subdivided stars on a and b vertices joined by an edge
// between their centers; equals T((a-1)/2, (b-1)/2).
inline Tree build_double_spider(int n, int a, int b) {
    if (a < 3 || b < 3)
        throw DomainError("double spider halves must have at least 3 vertices");
    if (a % 2 == 0 || b % 2 == 0)
        throw DomainError("double spider halves must have odd order");
    if (a + b != n)
        throw DomainError("double spider halves must sum to n: " + std::to_string(a) + "+" +
                          std::to_string(b) + " != " + std::to_string(n));
    return build_family(FamilySpec({(a - 1) / 2, (b - 1) / 2}));
}

// Degree multiset, descending. Sums to 2(n-1).
inline std::vector<int> degree_sequence(const Tree& t) {
    std::vector<int> d = t.degrees();
    std::sort(d.rbegin(), d.rend());
    return d;
}

// Applies a vertex permutation: vertex v becomes perm[v].
inline Tree relabel(const Tree& t, const std::vector<int>& perm) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(t.edges().size());
    for (auto [u, v] : t.edges()) edges.emplace_back(perm[u], perm[v]);
    return Tree(t.n(), std::move(edges));
}

namespace detail {

struct SpecCursor {
    std::string_view s;
    std::size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }

    int integer() {
        std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start) throw ParseError("expected a number", start);
        if (pos - start > 7) throw ParseError("number too large", start);
        int v = 0;
        for (std::size_t i = start; i < pos; ++i) v = v * 10 + (s[i] - '0');
        return v;
    }

    void expect(char c) {
        if (done() || peek() != c)
            throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }

    std::vector<int> integer_list() {
        std::vector<int> out{integer()};
        while (!done() && peek() == ',') {
            ++pos;
            out.push_back(integer());
        }
        return out;
    }
};

}  // namespace detail

// Tree-spec grammar shared by the CLI and test fixtures:
//   "path:n" | "star:n" | "S:n,k" | "S:n,a,b" | "T:a1,...,am" | "edges:u-v,..."
// S:n,k is the subdivided star (k must be (n-1)/2); S:n,a,b the double spider.
inline Tree parse_tree_spec(std::string_view s) {
    std::size_t colon = s.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'kind:...'", s.size());
    std::string_view kind = s.substr(0, colon);
    detail::SpecCursor cur{s, colon + 1};

    auto finish = [&cur] {
        if (!cur.done()) throw ParseError("trailing characters in tree spec", cur.pos);
    };

    if (kind == "path") {
        int n = cur.integer();
        finish();
        if (n < 2) throw ParseError("path needs n >= 2", colon + 1);
        return build_path(n);
    }
    if (kind == "star") {
        int n = cur.integer();
        finish();
        if (n < 2) throw ParseError("star needs n >= 2", colon + 1);
        return build_star(n);
    }
    if (kind == "S") {
        std::size_t args_at = cur.pos;
        std::vector<int> v = cur.integer_list();
        finish();
        if (v.size() == 2) {
            if (v[0] < 3 || v[0] % 2 == 0)
                throw ParseError("spider order must be odd and >= 3", args_at);
            if (v[1] != (v[0] - 1) / 2)
                throw ParseError("spider S:n,k requires k = (n-1)/2", args_at);
            return build_spider(v[0]);
        }
        if (v.size() == 3) {
            if (v[1] < 3 || v[2] < 3 || v[1] % 2 == 0 || v[2] % 2 == 0)
                throw ParseError("double spider halves must be odd and >= 3", args_at);
            if (v[1] + v[2] != v[0])
                throw ParseError("double spider halves must sum to n", args_at);
            return build_double_spider(v[0], v[1], v[2]);
        }
        throw ParseError("S takes 2 or 3 arguments", args_at);
    }
    if (kind == "T") {
        std::size_t args_at = cur.pos;
        std::vector<int> a = cur.integer_list();
        finish();
        if (a.size() == 1 && a[0] < 1)
            throw ParseError("single-core family needs a_1 >= 1", args_at);
        return build_family(FamilySpec(std::move(a)));
    }
    if (kind == "edges") {
        std::vector<std::pair<int, int>> edges;
        int max_label = 0;
        while (true) {
            int u = cur.integer();
            cur.expect('-');
            int v = cur.integer();
            edges.emplace_back(u, v);
            max_label = std::max({max_label, u, v});
            if (cur.done()) break;
            cur.expect(',');
        }
        std::size_t args_at = colon + 1;
        int n = max_label + 1;
        if (n < 2) throw ParseError("edge list needs at least two vertices", args_at);
        try {
            return Tree(n, std::move(edges));
        } catch (const DomainError& e) {
            throw ParseError(e.what(), args_at);
        }
    }
    throw ParseError("unknown tree kind '" + std::string(kind) + "'", 0);
}

}  // namespace treeperm
