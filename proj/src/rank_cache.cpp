#include "linkshom/rank_cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "linkshom/errors.hpp"

namespace linkshom {

namespace {

std::string fnv1a_hex(const std::string& text)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) h = (h ^ c) * 1099511628211ULL;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

std::string CacheKey::text() const
{
    std::ostringstream os;
    os << "v" << engine_version << "|m=" << m << "|n=" << n << "|parity=" << to_string(parity) << "|t=" << t
       << "|p=" << p << "|" << kind;
    return os.str();
}

RankCache::RankCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

RankCache RankCache::from_environment(const std::string& override_dir)
{
    if (!override_dir.empty()) return RankCache(override_dir);
    if (const char* env = std::getenv("LINKSHOM_CACHE"); env != nullptr && *env != '\0') return RankCache(env);
    return {};
}

std::filesystem::path RankCache::file_for(const std::string& key_text) const
{
    return directory_ / (fnv1a_hex(key_text) + ".json");
}

std::optional<nlohmann::json> RankCache::get(const CacheKey& key)
{
    const auto text = key.text();
    std::lock_guard lock(mutex_);
    if (auto it = memory_.find(text); it != memory_.end()) {
        ++hits_;
        return it->second;
    }
    if (!directory_.empty()) {
        std::ifstream in(file_for(text));
        if (in) {
            auto doc = nlohmann::json::parse(in, nullptr, false);
            // A hash collision or a torn file reads as a miss.
            if (!doc.is_discarded() && doc.contains("key") && doc["key"] == text && doc.contains("value")) {
                memory_[text] = doc["value"];
                ++hits_;
                return doc["value"];
            }
        }
    }
    ++misses_;
    return std::nullopt;
}

void RankCache::put(const CacheKey& key, const nlohmann::json& value)
{
    const auto text = key.text();
    std::lock_guard lock(mutex_);
    if (auto it = memory_.find(text); it != memory_.end()) {
        if (it->second != value)
            throw InvariantViolation("cache entry " + text + " rewritten with a different value");
        return;
    }
    memory_[text] = value;
    if (directory_.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);
    const auto target = file_for(text);
    if (std::filesystem::exists(target, ec)) return;
    // Write then rename, so readers never observe a partial entry.
    auto tmp = target;
    tmp += ".tmp" + std::to_string(reinterpret_cast<std::uintptr_t>(this));
    {
        std::ofstream out(tmp);
        if (!out) return;  // an unwritable cache only costs recomputation
        out << nlohmann::json{{"key", text}, {"value", value}}.dump() << '\n';
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

std::uint64_t RankCache::hits() const
{
    std::lock_guard lock(mutex_);
    return hits_;
}

std::uint64_t RankCache::misses() const
{
    std::lock_guard lock(mutex_);
    return misses_;
}

}  // namespace linkshom
