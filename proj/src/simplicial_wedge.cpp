#include "linkshom/simplicial_wedge.hpp"

#include <stdexcept>

#include <json.hpp>

namespace linkshom {

namespace {

constexpr std::size_t max_total_simplices = 20'000'000;

// All strictly increasing n-subsets of {1..p} in lexicographic order.
std::vector<std::vector<int>> jump_sets(int p, int n)
{
    std::vector<std::vector<int>> out;
    if (n > p) return out;
    std::vector<int> cur(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        out.push_back(cur);
        int i = n - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == p - (n - 1 - i)) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k) cur[static_cast<std::size_t>(k)] = cur[static_cast<std::size_t>(k - 1)] + 1;
    }
    return out;
}

// Lexicographic rank of an n-subset of {1..p}.
std::size_t subset_rank(const std::vector<int>& jumps, int p)
{
    const int n = static_cast<int>(jumps.size());
    std::size_t rank = 0;
    int prev = 0;
    for (int i = 0; i < n; ++i) {
        for (int v = prev + 1; v < jumps[static_cast<std::size_t>(i)]; ++v) rank += binomial(p - v, n - 1 - i);
        prev = jumps[static_cast<std::size_t>(i)];
    }
    return rank;
}

}  // namespace

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (r > UINT64_MAX) throw std::overflow_error("binomial coefficient exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

bool face_jumps(const std::vector<int>& jumps, int p, int i, std::vector<int>& out)
{
    out.clear();
    for (int j : jumps) {
        int v = j < i ? j : (j == i ? i : j - 1);
        if (v < 1 || v > p - 1 || (!out.empty() && out.back() == v)) return false;
        out.push_back(v);
    }
    return true;
}

void degeneracy_jumps(const std::vector<int>& jumps, int j, std::vector<int>& out)
{
    out.clear();
    for (int k : jumps) out.push_back(k <= j ? k : k + 1);
}

PointedSimplicialSet::PointedSimplicialSet(int m, int n, int p_max) : m_(m), n_(n), p_max_(p_max)
{
    if (m < 0) throw std::invalid_argument("strand count m must be >= 0");
    if (n < 1) throw std::invalid_argument("sphere dimension n must be >= 1");
    if (p_max < 0 || p_max > max_level)
        throw std::invalid_argument("p_max must lie in 0.." + std::to_string(max_level));

    std::size_t total = 0;
    for (int p = 0; p <= p_max; ++p) {
        total += static_cast<std::size_t>(m) * binomial(p, n) + 1;
        if (total > max_total_simplices) throw std::invalid_argument("simplicial model too large");
    }

    levels_.resize(static_cast<std::size_t>(p_max) + 1);
    masks_.resize(levels_.size());
    for (int p = 0; p <= p_max; ++p) {
        auto& level = levels_[static_cast<std::size_t>(p)];
        auto& masks = masks_[static_cast<std::size_t>(p)];
        level.push_back({});
        masks.push_back(0);
        const auto sets = jump_sets(p, n);
        for (int c = 1; c <= m; ++c)
            for (const auto& js : sets) {
                std::uint64_t mask = 0;
                for (int j : js) mask |= 1ULL << static_cast<unsigned>(j);
                level.push_back({c, js});
                masks.push_back(mask);
            }
    }

    std::vector<int> scratch;
    faces_.resize(levels_.size());
    degeneracies_.resize(levels_.size());
    for (int p = 0; p <= p_max; ++p) {
        const auto& level = levels_[static_cast<std::size_t>(p)];
        const int k = static_cast<int>(level.size()) - 1;
        if (p >= 1) {
            const int l = points(p - 1);
            for (int i = 0; i <= p; ++i) {
                std::vector<int> table(static_cast<std::size_t>(k));
                for (int id = 1; id <= k; ++id) {
                    const auto& e = level[static_cast<std::size_t>(id)];
                    table[static_cast<std::size_t>(id - 1)] =
                        face_jumps(e.jumps, p, i, scratch) ? id_of(p - 1, {e.strand, scratch}) : 0;
                }
                faces_[static_cast<std::size_t>(p)].emplace_back(k, l, std::move(table));
            }
        }
        if (p < p_max) {
            const int l = points(p + 1);
            for (int j = 0; j <= p; ++j) {
                std::vector<int> table(static_cast<std::size_t>(k));
                for (int id = 1; id <= k; ++id) {
                    const auto& e = level[static_cast<std::size_t>(id)];
                    degeneracy_jumps(e.jumps, j, scratch);
                    table[static_cast<std::size_t>(id - 1)] = id_of(p + 1, {e.strand, scratch});
                }
                degeneracies_[static_cast<std::size_t>(p)].emplace_back(k, l, std::move(table));
            }
        }
    }
}

void PointedSimplicialSet::check_level(int p) const
{
    if (p < 0 || p > p_max_)
        throw std::out_of_range("level " + std::to_string(p) + " outside 0.." + std::to_string(p_max_));
}

std::size_t PointedSimplicialSet::level_size(int p) const
{
    check_level(p);
    return levels_[static_cast<std::size_t>(p)].size();
}

const WedgeElement& PointedSimplicialSet::element(int p, int id) const
{
    check_level(p);
    const auto& level = levels_[static_cast<std::size_t>(p)];
    if (id < 0 || static_cast<std::size_t>(id) >= level.size())
        throw std::out_of_range("simplex id " + std::to_string(id) + " outside level " + std::to_string(p));
    return level[static_cast<std::size_t>(id)];
}

int PointedSimplicialSet::id_of(int p, const WedgeElement& e) const
{
    check_level(p);
    if (e.is_base()) return 0;
    if (e.strand < 1 || e.strand > m_ || static_cast<int>(e.jumps.size()) != n_)
        throw std::invalid_argument("not a simplex of this model");
    for (std::size_t i = 0; i < e.jumps.size(); ++i)
        if (e.jumps[i] < 1 || e.jumps[i] > p || (i > 0 && e.jumps[i] <= e.jumps[i - 1]))
            throw std::invalid_argument("jump set is not a strictly increasing subset of 1..p");
    return 1 + static_cast<int>(static_cast<std::size_t>(e.strand - 1) * binomial(p, n_) + subset_rank(e.jumps, p));
}

std::uint64_t PointedSimplicialSet::jump_mask(int p, int id) const
{
    static_cast<void>(element(p, id));
    return masks_[static_cast<std::size_t>(p)][static_cast<std::size_t>(id)];
}

const PointedMap& PointedSimplicialSet::face(int p, int i) const
{
    check_level(p);
    if (p < 1 || i < 0 || i > p)
        throw std::out_of_range("face d_" + std::to_string(i) + " undefined at level " + std::to_string(p));
    return faces_[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)];
}

const PointedMap& PointedSimplicialSet::degeneracy(int p, int j) const
{
    check_level(p);
    if (p >= p_max_ || j < 0 || j > p)
        throw std::out_of_range("degeneracy s_" + std::to_string(j) + " undefined at level " + std::to_string(p));
    return degeneracies_[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)];
}

std::string PointedSimplicialSet::to_json(int indent) const
{
    using nlohmann::json;
    json doc{{"m", m_}, {"n", n_}, {"p_max", p_max_}};
    json levels = json::array();
    for (int p = 0; p <= p_max_; ++p) {
        json simplices = json::array();
        for (const auto& e : levels_[static_cast<std::size_t>(p)])
            simplices.push_back(e.is_base() ? json{{"strand", 0}, {"jumps", json::array()}}
                                            : json{{"strand", e.strand}, {"jumps", e.jumps}});
        json faces = json::array();
        if (p >= 1)
            for (const auto& f : faces_[static_cast<std::size_t>(p)]) faces.push_back(f.table());
        json degens = json::array();
        if (p < p_max_)
            for (const auto& s : degeneracies_[static_cast<std::size_t>(p)]) degens.push_back(s.table());
        levels.push_back({{"p", p},
                          {"size", simplices.size()},
                          {"simplices", std::move(simplices)},
                          {"faces", std::move(faces)},
                          {"degeneracies", std::move(degens)}});
    }
    doc["levels"] = std::move(levels);
    return doc.dump(indent);
}

PointedSimplicialSet wedge_model(int m, int n, int p_max) { return {m, n, p_max}; }

}  // namespace linkshom
