#pragma once

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "treeperm/bounds.hpp"
#include "treeperm/canonical.hpp"
#include "treeperm/config.hpp"
#include "treeperm/errors.hpp"
#include "treeperm/freetree.hpp"
#include "treeperm/numerics.hpp"
#include "treeperm/tree.hpp"

namespace treeperm {

struct SearchOptions {
    int workers = 1;
    int partitions = 16;
    std::string checkpoint_path;  // empty: no checkpointing
    bool scan_violations = true;
};

// Result of one generation-space partition; merging these is a pure,
// commutative fold, so completion order never matters.
struct PartitionOutcome {
    int id = -1;
    std::uint64_t tree_count = 0;
    bool has_max = false;
    Rational max_pi;
    std::vector<std::string> argmax;  // canonical codes of all ties
    std::uint64_t violations = 0;     // classes with pi > bound
    std::vector<std::string> violating;
    std::uint64_t attaining = 0;  // classes with pi == bound
    std::vector<std::string> attaining_codes;
};

struct SearchResult {
    int n = 0;
    std::uint64_t tree_count = 0;
    Rational max_pi;
    std::vector<CanonicalCode> argmax;
    bool has_bound = false;
    Rational bound;
    std::uint64_t violations = 0;
    std::vector<CanonicalCode> violating;
    std::uint64_t bound_attaining = 0;
    std::vector<CanonicalCode> attaining;
    int partitions = 1;
    int workers = 1;
    double seconds = 0.0;
};

namespace detail {

inline std::int64_t to_i64_exact(const BigInt& v) {
    if (v != 0 && boost::multiprecision::msb(abs(v)) >= 62)
        throw CapacityError("value does not fit the fast search path");
    return v.convert_to<std::int64_t>();
}

// Partition boundaries: indices into canonical_prefixes(min(n, 8)). A
// partition owns the contiguous block of free trees whose level-sequence
// prefix falls in [lo, hi).
struct PrefixRange {
    int lo = 0, hi = 0;
};

inline int prefix_length(int n) { return std::min(n, 8); }

inline PrefixRange partition_range(std::size_t prefix_count, int partitions, int id) {
    PrefixRange r;
    r.lo = static_cast<int>(prefix_count * static_cast<std::size_t>(id) / partitions);
    r.hi = static_cast<int>(prefix_count * (static_cast<std::size_t>(id) + 1) / partitions);
    return r;
}

// Exhausts one partition: walks the rooted-successor chain, tracks which
// prefix block the sequence is in (the blocks appear in enumeration order),
// evaluates only its own block and stops once past it. Evaluation runs the
// integer matching DP; every intermediate is bounded by per(L(P_n)), which
// for n <= 24 is below 2^31, so plain 64-bit arithmetic is exact.
inline PartitionOutcome run_partition(int n, int partitions, int id, bool scan) {
    PartitionOutcome out;
    out.id = id;
    const auto prefixes = canonical_prefixes(prefix_length(n));
    const auto [lo, hi] = partition_range(prefixes.size(), partitions, id);
    if (lo >= hi) return out;

    const bool has_bound = n >= 3 && scan;
    std::int64_t bound_num = 0, bound_den = 1;
    if (has_bound) {
        const Rational b = conjectured_bound(n);
        bound_num = to_i64_exact(numerator(b));
        bound_den = to_i64_exact(denominator(b));
    }

    std::vector<std::int64_t> prod(n), sum(n);
    std::int64_t best_per = 0, best_dp = 1;
    const int k = prefix_length(n);

    FreeTreeEnumerator en(n);
    int ptr = 0;
    bool locate = true;
    while (en.next_rooted()) {
        if (en.change_pos() < k) locate = true;
        if (locate) {
            const auto& lv = en.levels();
            while (!std::equal(lv.begin(), lv.begin() + k, prefixes[ptr].begin())) ++ptr;
            locate = false;
            if (ptr >= hi) break;
        }
        if (ptr < lo || ptr >= hi) {
            if (ptr >= hi) break;
            continue;
        }
        if (!en.accept_free()) continue;

        const auto& par = en.parent();
        const auto& deg = en.degree();
        for (int i = 0; i < n; ++i) {
            prod[i] = 1;
            sum[i] = 0;
        }
        for (int i = n - 1; i >= 1; --i) {
            const std::int64_t any = deg[i] * prod[i] + sum[i];
            const int p = par[i];
            sum[p] = sum[p] * any + prod[i] * prod[p];
            prod[p] *= any;
        }
        const std::int64_t per = deg[0] * prod[0] + sum[0];
        std::int64_t dp = 1;
        for (int i = 0; i < n; ++i) dp *= deg[i];

        ++out.tree_count;
        const __int128 lhs = static_cast<__int128>(per) * best_dp;
        const __int128 rhs = static_cast<__int128>(best_per) * dp;
        if (!out.has_max || lhs > rhs) {
            out.has_max = true;
            best_per = per;
            best_dp = dp;
            out.max_pi = Rational(per, dp);
            out.argmax.assign(1, canonical_code(en.to_tree()).parens);
        } else if (lhs == rhs) {
            out.argmax.push_back(canonical_code(en.to_tree()).parens);
        }
        if (has_bound) {
            const __int128 diff = static_cast<__int128>(per) * bound_den -
                                  static_cast<__int128>(bound_num) * dp;
            if (diff > 0) {
                ++out.violations;
                out.violating.push_back(canonical_code(en.to_tree()).parens);
            } else if (diff == 0) {
                ++out.attaining;
                out.attaining_codes.push_back(canonical_code(en.to_tree()).parens);
            }
        }
    }
    return out;
}

inline nlohmann::json outcome_to_json(const PartitionOutcome& o) {
    nlohmann::json j;
    j["partition_id"] = o.id;
    j["status"] = "done";
    j["tree_count"] = o.tree_count;
    j["has_max"] = o.has_max;
    j["max_pi"] = o.has_max ? rat_str(o.max_pi) : "";
    j["argmax_codes"] = o.argmax;
    j["violations"] = o.violations;
    j["violating_codes"] = o.violating;
    j["attaining"] = o.attaining;
    j["attaining_codes"] = o.attaining_codes;
    return j;
}

}  // namespace detail

// Persistent search state: which partitions are done and what they found.
struct CheckpointState {
    int n = 0;
    int partitions = 0;
    bool scan = true;
    std::map<int, PartitionOutcome> done;
};

inline void checkpoint_save(const CheckpointState& state, const std::string& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw Error("cannot open checkpoint file for writing: " + path);
    nlohmann::json meta;
    meta["kind"] = "treeperm-checkpoint";
    meta["version"] = 1;
    meta["n"] = state.n;
    meta["partitions"] = state.partitions;
    meta["scan"] = state.scan;
    f << meta.dump() << '\n';
    for (const auto& [id, outcome] : state.done) f << detail::outcome_to_json(outcome).dump() << '\n';
}

inline CheckpointState checkpoint_load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open checkpoint file: " + path);
    CheckpointState state;
    std::string line;
    std::size_t record = 0;
    bool have_meta = false;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw IntegrityError("unparseable checkpoint record", record);
        try {
            if (!have_meta) {
                if (j.value("kind", "") != "treeperm-checkpoint" || j.value("version", 0) != 1)
                    throw IntegrityError("not a treeperm checkpoint", record);
                state.n = j.at("n").get<int>();
                state.partitions = j.at("partitions").get<int>();
                state.scan = j.at("scan").get<bool>();
                if (state.n < 2 || state.partitions < 1)
                    throw IntegrityError("checkpoint meta out of range", record);
                have_meta = true;
            } else {
                if (j.value("status", "") != "done") {
                    ++record;
                    continue;
                }
                PartitionOutcome o;
                o.id = j.at("partition_id").get<int>();
                if (o.id < 0 || o.id >= state.partitions)
                    throw IntegrityError("partition id out of range", record);
                if (state.done.count(o.id))
                    throw IntegrityError("duplicate partition record", record);
                o.tree_count = j.at("tree_count").get<std::uint64_t>();
                o.has_max = j.at("has_max").get<bool>();
                if (o.has_max) o.max_pi = parse_rational(j.at("max_pi").get<std::string>());
                o.argmax = j.at("argmax_codes").get<std::vector<std::string>>();
                o.violations = j.at("violations").get<std::uint64_t>();
                o.violating = j.at("violating_codes").get<std::vector<std::string>>();
                o.attaining = j.at("attaining").get<std::uint64_t>();
                o.attaining_codes = j.at("attaining_codes").get<std::vector<std::string>>();
                state.done.emplace(o.id, std::move(o));
            }
        } catch (const IntegrityError&) {
            throw;
        } catch (const std::exception& e) {
            throw IntegrityError(std::string("bad checkpoint record: ") + e.what(), record);
        }
        ++record;
    }
    if (!have_meta) return CheckpointState{};  // empty file: fresh search
    return state;
}

namespace detail {

inline SearchResult merge_outcomes(int n, bool scan, const std::vector<PartitionOutcome>& outs) {
    SearchResult r;
    r.n = n;
    if (n >= 3) {
        r.bound = conjectured_bound(n);
        r.has_bound = scan;
    }
    for (const auto& o : outs) {
        r.tree_count += o.tree_count;
        r.violations += o.violations;
        r.bound_attaining += o.attaining;
        for (const auto& c : o.violating) r.violating.push_back(CanonicalCode{c});
        for (const auto& c : o.attaining_codes) r.attaining.push_back(CanonicalCode{c});
        if (!o.has_max) continue;
        if (r.argmax.empty() || o.max_pi > r.max_pi) {
            r.max_pi = o.max_pi;
            r.argmax.clear();
        } else if (o.max_pi < r.max_pi) {
            continue;
        }
        for (const auto& c : o.argmax) r.argmax.push_back(CanonicalCode{c});
    }
    std::sort(r.argmax.begin(), r.argmax.end());
    std::sort(r.violating.begin(), r.violating.end());
    std::sort(r.attaining.begin(), r.attaining.end());
    return r;
}

}  // namespace detail

// Exact maximum of pi over all isomorphism classes on n vertices, with every
// argmax recorded; with scan_violations also counts and records the classes
// at or above the conjectured bound. Partitions run independently (possibly
// across threads); with a checkpoint path, finished partitions are appended
// to the file and skipped on resume.
inline SearchResult max_pi_search(int n, const SearchOptions& opts = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    if (n < 2 || n > caps::search())
        throw CapacityError("search supports 2 <= n <= " + std::to_string(caps::search()));
    const int partitions = std::max(1, opts.partitions);
    const int workers = std::max(1, opts.workers);

    std::vector<PartitionOutcome> outcomes(partitions);
    std::vector<char> have(partitions, 0);

    std::ofstream log;
    if (!opts.checkpoint_path.empty()) {
        std::ifstream probe(opts.checkpoint_path);
        CheckpointState prior;
        if (probe.good()) {
            probe.close();
            prior = checkpoint_load(opts.checkpoint_path);
            if (prior.partitions != 0 &&
                (prior.n != n || prior.partitions != partitions || prior.scan != opts.scan_violations))
                throw IntegrityError("checkpoint does not match this search (n=" +
                                         std::to_string(prior.n) + ", partitions=" +
                                         std::to_string(prior.partitions) + ")",
                                     0);
        }
        for (auto& [id, o] : prior.done) {
            outcomes[id] = o;
            have[id] = 1;
        }
        // Rewrite the file so it reflects exactly this run's meta + records.
        CheckpointState fresh{n, partitions, opts.scan_violations, {}};
        for (auto& [id, o] : prior.done) fresh.done.emplace(id, o);
        checkpoint_save(fresh, opts.checkpoint_path);
        log.open(opts.checkpoint_path, std::ios::app);
    }

    std::mutex mu;
    std::atomic<int> next{0};
    auto work = [&] {
        while (true) {
            const int id = next.fetch_add(1);
            if (id >= partitions) break;
            if (have[id]) continue;
            PartitionOutcome o = detail::run_partition(n, partitions, id, opts.scan_violations);
            std::lock_guard<std::mutex> lock(mu);
            outcomes[id] = std::move(o);
            have[id] = 1;
            if (log.is_open()) {
                log << detail::outcome_to_json(outcomes[id]).dump() << '\n';
                log.flush();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    SearchResult r = detail::merge_outcomes(n, opts.scan_violations, outcomes);
    r.partitions = partitions;
    r.workers = workers;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// Same engine with the bound scan forced on; kept as its own entry point
// because "how many classes beat the bound" is a different question from
// "what is the maximum".
inline SearchResult violation_scan(int n, SearchOptions opts = {}) {
    opts.scan_violations = true;
    return max_pi_search(n, opts);
}

}  // namespace treeperm
