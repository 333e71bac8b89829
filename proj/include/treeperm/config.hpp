#pragma once

#include <cstdlib>
#include <string>

namespace treeperm {

// Size caps for the exponential-cost oracles. Conservative defaults keep
// memory and runtime predictable in CI; each can be raised (or lowered)
// through an environment variable of the same name.
namespace caps {

inline int env_cap(const char* name, int fallback) {
    if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        long parsed = std::strtol(v, &end, 10);
        if (end && *end == '\0' && parsed >= 2 && parsed <= 64) return static_cast<int>(parsed);
    }
    return fallback;
}

inline int ryser() {
    static int v = env_cap("TREEPERM_RYSER_CAP", 30);
    return v;
}

inline int naive() {
    static int v = env_cap("TREEPERM_NAIVE_CAP", 9);
    return v;
}

inline int matchings() {
    static int v = env_cap("TREEPERM_MATCHING_CAP", 20);
    return v;
}

inline int search() {
    static int v = env_cap("TREEPERM_SEARCH_CAP", 24);
    return v;
}

}  // namespace caps

}  // namespace treeperm
