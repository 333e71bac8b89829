#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "treeperm/errors.hpp"
#include "treeperm/tree.hpp"

namespace treeperm {

// Standard linear-time decode of a Prufer sequence into the labelled tree it
// encodes (sequence length n-2, labels 0..n-1).
inline Tree prufer_decode(const std::vector<int>& seq) {
    const int n = static_cast<int>(seq.size()) + 2;
    std::vector<int> deg(n, 1);
    for (int s : seq) {
        if (s < 0 || s >= n) throw DomainError("prufer symbol out of range");
        ++deg[s];
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    int ptr = 0;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int s : seq) {
        edges.emplace_back(leaf, s);
        if (--deg[s] == 1 && s < ptr) {
            leaf = s;
        } else {
            ++ptr;
            while (deg[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.emplace_back(leaf, n - 1);
    return Tree(n, std::move(edges));
}

// Uniform random labelled tree via a uniform Prufer sequence.
inline Tree random_tree(int n, std::mt19937_64& rng) {
    if (n < 2) throw DomainError("random tree needs n >= 2");
    if (n == 2) return build_path(2);
    std::vector<int> seq(n - 2);
    for (int& s : seq) s = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    return prufer_decode(seq);
}

namespace detail {

// Iterates every labelled tree on n vertices (all n^{n-2} Prufer sequences)
// and counts distinct isomorphism classes by inserting an exact canonical
// form into a bitset. The canonical form is the AHU balanced-parenthesis
// code, bit-packed ('('=0, ')'=1, 2n bits), of the tree rooted at its
// centroid; for bicentroidal trees the smaller of the two rootings. n <= 13
// keeps the packed code within 32 bits and the bitset within a few MB, far
// beyond where the n^{n-2} iteration count is feasible anyway.
class PruferCensus {
public:
    explicit PruferCensus(int n) : n_(n), bits_(std::size_t{1} << (2 * n - 6), 0) {
        if (n < 3 || n > 13) throw CapacityError("prufer census supports 3 <= n <= 13");
    }

    // Processes all sequences whose first symbol is `first`. Symbol counts
    // (hence degrees) are maintained incrementally across odometer steps.
    void run_block(int first) {
        std::vector<int> seq(n_ - 2, 0);
        seq[0] = first;
        int cnt[16] = {0};
        cnt[first] += 1;
        cnt[0] += n_ - 3;
        while (true) {
            record(seq, cnt);
            int i = n_ - 3;
            while (i >= 1 && seq[i] == n_ - 1) {
                seq[i--] = 0;
                --cnt[n_ - 1];
                ++cnt[0];
            }
            if (i < 1) break;
            --cnt[seq[i]];
            ++seq[i];
            ++cnt[seq[i]];
        }
    }

    void merge(const PruferCensus& other) {
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
    }

    std::uint64_t distinct() const {
        std::uint64_t count = 0;
        for (std::uint64_t w : bits_) count += std::popcount(w);
        return count;
    }

private:
    void record(const std::vector<int>& seq, const int* cnt) {
        // Decode into edge arrays. eu[e] is removed as a leaf at step e and
        // attached to ev[e]; in the tree rooted at n-1 that makes ev[e] the
        // parent of eu[e], and e itself a bottom-up processing order.
        int work[16], eu[16], ev[16];
        for (int v = 0; v < n_; ++v) work[v] = cnt[v] + 1;
        int ptr = 0;
        while (work[ptr] != 1) ++ptr;
        int leaf = ptr, ne = 0;
        for (int s : seq) {
            eu[ne] = leaf;
            ev[ne++] = s;
            if (--work[s] == 1 && s < ptr) {
                leaf = s;
            } else {
                ++ptr;
                while (work[ptr] != 1) ++ptr;
                leaf = ptr;
            }
        }
        eu[ne] = leaf;
        ev[ne++] = n_ - 1;

        // Subtree sizes and heaviest children straight off the removal order.
        int sz[16], maxch[16];
        for (int v = 0; v < n_; ++v) {
            sz[v] = 1;
            maxch[v] = 0;
        }
        for (int e = 0; e < ne; ++e) {
            const int u = eu[e], p = ev[e];
            sz[p] += sz[u];
            if (sz[u] > maxch[p]) maxch[p] = sz[u];
        }
        int c1 = -1, c2 = -1;
        for (int v = 0; v < n_; ++v) {
            int heaviest = maxch[v];
            if (n_ - sz[v] > heaviest) heaviest = n_ - sz[v];
            if (2 * heaviest <= n_) (c1 < 0 ? c1 : c2) = v;
        }

        // CSR adjacency, only needed for the code pass.
        int off[17], slot[17], adj[32];
        off[0] = 0;
        for (int v = 0; v < n_; ++v) off[v + 1] = off[v] + cnt[v] + 1;
        for (int v = 0; v < n_; ++v) slot[v] = off[v];
        for (int e = 0; e < ne; ++e) {
            adj[slot[eu[e]]++] = ev[e];
            adj[slot[ev[e]]++] = eu[e];
        }

        std::uint32_t key = packed_code(c1, off, adj);
        if (c2 >= 0) {
            std::uint32_t other = packed_code(c2, off, adj);
            if (other < key) key = other;
        }
        bits_[key >> 6] |= std::uint64_t{1} << (key & 63);
    }

    // AHU code of the tree rooted at `root`, children ordered by descending
    // (subtree size, code); the root's own parentheses are left implicit so
    // the value fits 2n-2 bits.
    std::uint32_t packed_code(int root, const int* off, const int* adj) {
        int order[16], par[16], sz[16];
        std::uint32_t code[16];
        order[0] = root;
        par[root] = -1;
        int filled = 1;
        for (int i = 0; i < filled; ++i) {
            int v = order[i];
            for (int a = off[v]; a < off[v + 1]; ++a)
                if (adj[a] != par[v]) {
                    par[adj[a]] = v;
                    order[filled++] = adj[a];
                }
        }
        for (int i = n_ - 1; i >= 0; --i) {
            int v = order[i];
            int ks[16], kn = 0;
            std::uint32_t kc[16];
            for (int a = off[v]; a < off[v + 1]; ++a)
                if (adj[a] != par[v]) {
                    ks[kn] = sz[adj[a]];
                    kc[kn++] = code[adj[a]];
                }
            // Insertion sort, descending by (size, code).
            for (int x = 1; x < kn; ++x) {
                int s = ks[x];
                std::uint32_t c = kc[x];
                int y = x - 1;
                while (y >= 0 && (ks[y] < s || (ks[y] == s && kc[y] < c))) {
                    ks[y + 1] = ks[y];
                    kc[y + 1] = kc[y];
                    --y;
                }
                ks[y + 1] = s;
                kc[y + 1] = c;
            }
            std::uint32_t inner = 0;
            int size_v = 1;
            for (int x = 0; x < kn; ++x) {
                inner = (inner << (2 * ks[x])) | kc[x];
                size_v += ks[x];
            }
            sz[v] = size_v;
            code[v] = v == root ? inner : (inner << 1) | 1;
        }
        return code[root];
    }

    int n_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace detail

// Counts isomorphism classes of trees on n vertices by brute force over all
// n^{n-2} labelled trees. This is the independent oracle the canonical
// generator is validated against; it dies combinatorially past n = 11.
inline std::uint64_t prufer_census(int n, int workers = 1) {
    if (n == 2) return 1;
    if (workers < 1) workers = 1;
    if (workers > n) workers = n;
    std::vector<detail::PruferCensus> parts;
    parts.reserve(workers);
    for (int w = 0; w < workers; ++w) parts.emplace_back(n);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            for (int first = w; first < n; first += workers) parts[w].run_block(first);
        });
    for (auto& t : threads) t.join();
    for (int w = 1; w < workers; ++w) parts[0].merge(parts[w]);
    return parts[0].distinct();
}

}  // namespace treeperm
