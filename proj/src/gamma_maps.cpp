#include "linkshom/gamma_maps.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace linkshom {

PointedMap::PointedMap(int source_size, int target_size, std::vector<int> table)
    : k_(source_size), l_(target_size), table_(std::move(table))
{
    if (k_ < 0 || l_ < 0) throw std::invalid_argument("pointed map sizes must be non-negative");
    if (static_cast<int>(table_.size()) != k_)
        throw std::invalid_argument("pointed map table has " + std::to_string(table_.size()) + " entries, expected " +
                                    std::to_string(k_));
    for (int v : table_)
        if (v < 0 || v > l_)
            throw std::invalid_argument("pointed map entry " + std::to_string(v) + " outside 0.." + std::to_string(l_));
}

PointedMap PointedMap::identity(int k)
{
    std::vector<int> table(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) table[static_cast<std::size_t>(i)] = i + 1;
    return {k, k, std::move(table)};
}

PointedMap PointedMap::constant(int k, int l) { return {k, l, std::vector<int>(static_cast<std::size_t>(k), 0)}; }

std::string PointedMap::to_text() const
{
    std::string out = std::to_string(k_) + " " + std::to_string(l_) + " :";
    for (int v : table_) out += " " + std::to_string(v);
    return out;
}

PointedMap PointedMap::parse(std::string_view text)
{
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("pointed map: expected 'k l : i1 ... ik'");
    std::istringstream head{std::string(text.substr(0, colon))};
    int k = 0;
    int l = 0;
    std::string extra;
    if (!(head >> k >> l) || (head >> extra)) throw std::invalid_argument("pointed map: malformed 'k l' header");
    std::istringstream body{std::string(text.substr(colon + 1))};
    std::vector<int> table;
    int v = 0;
    while (body >> v) table.push_back(v);
    if (!body.eof()) throw std::invalid_argument("pointed map: malformed entries");
    return {k, l, std::move(table)};
}

std::size_t PointedMapHash::operator()(const PointedMap& f) const noexcept
{
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) { h = (h ^ v) * 1099511628211ULL; };
    mix(static_cast<std::uint64_t>(f.source_size()));
    mix(static_cast<std::uint64_t>(f.target_size()));
    for (int v : f.table()) mix(static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
}

PointedMap compose(const PointedMap& f, const PointedMap& g)
{
    if (f.target_size() != g.source_size())
        throw std::invalid_argument("compose: target of f (" + std::to_string(f.target_size()) +
                                    ") differs from source of g (" + std::to_string(g.source_size()) + ")");
    std::vector<int> table;
    table.reserve(f.table().size());
    for (int v : f.table()) table.push_back(g(v));
    return {f.source_size(), g.target_size(), std::move(table)};
}

void accumulate_image(const PointedMap& f, const OmegaMonomial& m, GenParity parity, std::int64_t coef,
                      std::vector<IntTerm>& out)
{
    std::array<OmegaPair, OmegaMonomial::max_word_length> raw{};
    std::size_t len = 0;
    for (const auto& p : m.factors()) {
        int a = f(p.a);
        int b = f(p.b);
        if (a == 0 || b == 0 || a == b) return;
        raw[len++] = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)};
    }
    accumulate_normal_form(f.target_size(), std::span<const OmegaPair>(raw.data(), len), parity, coef, out);
}

AlgebraElement apply(const PointedMap& f, const AlgebraElement& x, GenParity parity)
{
    if (x.n() != f.source_size()) throw std::invalid_argument("apply: element lives on a different point count");
    std::vector<IntTerm> image;
    std::vector<AlgebraElement::Term> terms;
    for (const auto& [m, c] : x.terms()) {
        image.clear();
        accumulate_image(f, m, parity, 1, image);
        for (const auto& [im, ic] : image) terms.emplace_back(im, c * Rational(ic));
    }
    return AlgebraElement::from_terms(f.target_size(), x.word_length(), std::move(terms));
}

InducedMap induced_map(const PointedMap& f, int t, GenParity parity)
{
    const auto source = enumerate_basis(f.source_size(), t);
    const auto target = enumerate_basis(f.target_size(), t);
    InducedMap out{f, t, parity, SparseRationalMatrix(target.size(), 0)};
    std::vector<IntTerm> image;
    std::vector<SparseRationalMatrix::Entry> column;
    for (const auto& m : source) {
        image.clear();
        accumulate_image(f, m, parity, 1, image);
        merge_terms(image);
        column.clear();
        for (const auto& [im, c] : image) {
            auto it = std::lower_bound(target.begin(), target.end(), im);
            column.push_back({static_cast<std::uint32_t>(it - target.begin()), Rational(c)});
        }
        out.matrix.append_column(column);
    }
    return out;
}

std::size_t InducedMapCache::KeyHash::operator()(const Key& key) const noexcept
{
    return PointedMapHash{}(key.map) * 31 + static_cast<std::size_t>(key.t) * 2 +
           (key.parity == GenParity::odd ? 1 : 0);
}

std::shared_ptr<const InducedMap> InducedMapCache::get(const PointedMap& f, int t, GenParity parity)
{
    Key key{f, t, parity};
    {
        std::shared_lock lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto value = std::make_shared<const InducedMap>(induced_map(f, t, parity));
    std::unique_lock lock(mutex_);
    entries_[key] = value;
    return value;
}

std::size_t InducedMapCache::size() const
{
    std::shared_lock lock(mutex_);
    return entries_.size();
}

}  // namespace linkshom
