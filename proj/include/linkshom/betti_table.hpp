#pragma once

// Betti tables produced by the engine and consumed by the series reports.

#include <cstdint>
#include <string>
#include <vector>

namespace linkshom {

struct BettiEntry {
    int u = 0;
    std::uint64_t betti = 0;
    /// Every (p, t) slice contributing to degree u was fully resolved.
    bool complete = false;
    friend bool operator==(const BettiEntry&, const BettiEntry&) = default;
};

struct BettiTable {
    int m = 0;
    int n = 1;
    int d = 0;
    std::vector<BettiEntry> entries;  // u = 0..u_max in order
    std::string p_bound_policy;       // "2t" or "user"
    std::string rank_method;          // "multimodular" or "exact"
    /// Largest simplicial degree resolved for each word length t.
    std::vector<int> p_range;
    std::string caveat;
};

}  // namespace linkshom
