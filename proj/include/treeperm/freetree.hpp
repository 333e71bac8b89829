#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "treeperm/config.hpp"
#include "treeperm/errors.hpp"
#include "treeperm/tree.hpp"

namespace treeperm {

// Enumerates non-isomorphic free trees on n vertices through canonical level
// sequences.
//
// Rooted layer: a rooted tree is stored as its preorder level sequence
// (root = level 1) with every vertex's child blocks in non-increasing
// lexicographic order, i.e. the lexicographically largest sequence for that
// rooted tree. next_rooted() walks all of them in decreasing order: start
// from the path [1,2,...,n]; then repeatedly find the last position p with
// level >= 3, let q be p's parent, and overwrite the tail from p on by
// cyclically repeating the segment [q, p). This both lowers position p one
// level and fills the remainder with the largest canonical completion.
//
// Free layer: accept_free() keeps exactly one rooted sequence per
// isomorphism class. A sequence is kept iff its root is a centroid (no child
// subtree holds more than n/2 vertices) and, when the tree is bicentroidal
// (some child subtree holds exactly n/2, its root being the second
// centroid), the sequence is lexicographically >= the canonical sequence
// rooted at that other centroid.
class FreeTreeEnumerator {
public:
    explicit FreeTreeEnumerator(int n) : n_(n) {
        if (n_ < 2) throw DomainError("free-tree enumeration needs n >= 2");
        level_.resize(n_);
        parent_.assign(n_, -1);
        degree_.assign(n_, 0);
        size_.assign(n_, 1);
        last_at_.assign(n_ + 2, -1);
    }

    // Advances to the next canonical rooted sequence. The first call yields
    // the path. Returns false once past the star [1,2,...,2].
    bool next_rooted() {
        if (fresh_) {
            for (int i = 0; i < n_; ++i) level_[i] = i + 1;
            fresh_ = false;
            change_pos_ = 0;
            return true;
        }
        int p = -1;
        for (int i = n_ - 1; i >= 0; --i)
            if (level_[i] >= 3) {
                p = i;
                break;
            }
        if (p < 0) return false;
        int q = -1;
        for (int i = p - 1; i >= 0; --i)
            if (level_[i] == level_[p] - 1) {
                q = i;
                break;
            }
        const int period = p - q;
        for (int i = p; i < n_; ++i) level_[i] = level_[i - period];
        change_pos_ = p;
        return true;
    }

    // First index the last next_rooted() call modified (0 for the first
    // sequence). Entries before it are unchanged, which lets callers track
    // sequence prefixes in O(1) per step.
    int change_pos() const { return change_pos_; }

    const std::vector<int>& levels() const { return level_; }

    // The centroid filter. On true, parent()/degree() describe the tree.
    bool accept_free() {
        for (int i = 0; i < n_; ++i) {
            parent_[i] = i == 0 ? -1 : last_at_[level_[i] - 1];
            last_at_[level_[i]] = i;
            degree_[i] = 0;
            size_[i] = 1;
        }
        for (int i = 1; i < n_; ++i) {
            ++degree_[parent_[i]];
            ++degree_[i];
        }
        for (int i = n_ - 1; i >= 1; --i) size_[parent_[i]] += size_[i];
        int heavy = -1;
        for (int i = 1; i < n_; ++i)
            if (parent_[i] == 0) {
                if (2 * size_[i] > n_) return false;
                if (2 * size_[i] == n_) heavy = i;
            }
        if (heavy < 0) return true;  // unique centroid
        return !(level_ < rerooted_canonical_levels(heavy));
    }

    const std::vector<int>& parent() const { return parent_; }
    const std::vector<int>& degree() const { return degree_; }
    int n() const { return n_; }

    Tree to_tree() const {
        std::vector<std::pair<int, int>> edges;
        edges.reserve(n_ - 1);
        for (int i = 1; i < n_; ++i) edges.emplace_back(parent_[i], i);
        return Tree(n_, std::move(edges));
    }

private:
    // Canonical (lexicographically largest) level sequence of the current
    // tree re-rooted at `root`. Only reached for bicentroidal candidates.
    std::vector<int> rerooted_canonical_levels(int root) const {
        std::vector<std::vector<int>> adj(n_);
        for (int i = 1; i < n_; ++i) {
            adj[parent_[i]].push_back(i);
            adj[i].push_back(parent_[i]);
        }
        auto block = [&](auto&& self, int v, int from, int depth) -> std::vector<int> {
            std::vector<std::vector<int>> kids;
            for (int w : adj[v])
                if (w != from) kids.push_back(self(self, w, v, depth + 1));
            std::sort(kids.begin(), kids.end(), std::greater<>());
            std::vector<int> out{depth};
            for (auto& k : kids) out.insert(out.end(), k.begin(), k.end());
            return out;
        };
        return block(block, root, -1, 1);
    }

    int n_;
    bool fresh_ = true;
    int change_pos_ = 0;
    std::vector<int> level_, parent_, degree_, size_, last_at_;
};

// Visits each isomorphism class of trees on n vertices exactly once, in a
// fixed deterministic order. The visitor receives the enumerator positioned
// on the accepted tree.
template <class Visitor>
void enumerate_free_trees(int n, Visitor&& visit, int cap = caps::search()) {
    if (n > cap)
        throw CapacityError("free-tree enumeration: order " + std::to_string(n) +
                            " exceeds cap " + std::to_string(cap));
    FreeTreeEnumerator en(n);
    while (en.next_rooted())
        if (en.accept_free()) visit(en);
}

inline std::uint64_t count_free_trees(int n, int cap = caps::search()) {
    std::uint64_t count = 0;
    enumerate_free_trees(n, [&](const FreeTreeEnumerator&) { ++count; }, cap);
    return count;
}

// All canonical rooted level sequences on k vertices, in enumeration order.
// Every canonical n-sequence (k <= n) starts with exactly one of these, and
// prefixes appear in this order along the n-vertex enumeration, which is what
// makes them usable as partition boundaries for the search.
inline std::vector<std::vector<int>> canonical_prefixes(int k) {
    std::vector<std::vector<int>> out;
    FreeTreeEnumerator en(k);
    while (en.next_rooted()) out.push_back(en.levels());
    return out;
}

}  // namespace treeperm
