#pragma once

// Content-addressed store for dimensions and ranks of slice objects. Keys
// carry the parity of d-1 rather than d, since dimensions do not depend on
// d and ranks only through that parity. Matrices are never stored.

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "linkshom/arnold_algebra.hpp"

namespace linkshom {

inline constexpr int engine_version = 1;

struct CacheKey {
    int m = 0;
    int n = 1;
    GenParity parity = GenParity::odd;
    int t = 0;
    int p = 0;
    /// Object kind, e.g. "normalized_dim" or "boundary_rank/multimodular/seed=7".
    std::string kind;

    [[nodiscard]] std::string text() const;
};

class RankCache {
public:
    /// Memory only.
    RankCache() = default;
    /// Memory plus an on-disk directory, created on first write.
    explicit RankCache(std::filesystem::path directory);

    /// Directory from `override_dir` if non-empty, else from LINKSHOM_CACHE,
    /// else memory only.
    static RankCache from_environment(const std::string& override_dir = {});

    [[nodiscard]] std::optional<nlohmann::json> get(const CacheKey& key);
    /// Entries are immutable: re-putting an equal value is a no-op, a
    /// different value throws InvariantViolation.
    void put(const CacheKey& key, const nlohmann::json& value);

    [[nodiscard]] std::uint64_t hits() const;
    [[nodiscard]] std::uint64_t misses() const;
    [[nodiscard]] const std::filesystem::path& directory() const { return directory_; }

private:
    [[nodiscard]] std::filesystem::path file_for(const std::string& key_text) const;

    std::filesystem::path directory_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, nlohmann::json> memory_;
    std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
};

}  // namespace linkshom
