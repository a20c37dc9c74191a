#pragma once

// Command dispatch shared by the executable and the tests. Parsing of argv
// lives in the tool; everything here works on an already-parsed JobSpec.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linkshom/exact_linalg.hpp"

namespace linkshom {

enum class Command { basis, model, betti, euler, series, radius, verify };
enum class OutputFormat { json, csv, md };

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_validation = 2;
inline constexpr int exit_invariant = 3;

struct JobSpec {
    Command command = Command::verify;
    int m = 1;
    int n = 1;
    int d = 7;
    int t = 0;
    int p = 0;
    int points = 0;            // basis
    int u_max = 0;             // betti
    std::optional<int> p_max;  // betti, required for n >= 2
    int order = 0;             // series; euler uses terms = order + 1
    int t_max = 4;             // euler --check
    bool pair = false;         // euler
    bool check = false;        // euler
    bool retraction = false;   // betti
    std::string series_kind = "links";
    std::string suite = "all";
    OutputFormat format = OutputFormat::json;
    std::string cache_dir;     // empty: LINKSHOM_CACHE or memory only
    RankPolicy policy = RankPolicy::multimodular;
    std::uint64_t seed = 0;
    int jobs = 1;
};

struct RunResult {
    int exit_code = exit_ok;
    std::string output;  // stdout
    std::string error;   // stderr
};

/// Runs one job. Never throws: validation errors exit with 2, broken
/// invariants with 3, anything else with 1.
[[nodiscard]] RunResult run(const JobSpec& spec);

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::uint64_t cases = 0;
    std::string detail;  // first failure, if any
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;
    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::string to_json() const;
};

/// Runs one invariant suite by name, or every suite for "all".
/// `m` selects the strand count for the euler suite.
[[nodiscard]] VerifyReport verify(const std::string& suite, int m = 2);

}  // namespace linkshom
