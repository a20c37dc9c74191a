#include "linkshom/arnold_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace linkshom {

GenParity parity_of_dimension(int d) { return ((d - 1) % 2 != 0) ? GenParity::odd : GenParity::even; }

std::string_view to_string(GenParity parity) { return parity == GenParity::odd ? "odd" : "even"; }

// ---------------------------------------------------------------------------
// OmegaMonomial

OmegaMonomial::OmegaMonomial(int n)
{
    if (n < 0 || n > max_points) throw std::invalid_argument("point count out of range: " + std::to_string(n));
    n_ = static_cast<std::uint8_t>(n);
}

OmegaMonomial::OmegaMonomial(int n, std::span<const OmegaPair> factors, trusted_t) : OmegaMonomial(n)
{
    if (factors.size() > max_word_length) throw std::invalid_argument("word length exceeds supported maximum");
    len_ = static_cast<std::uint8_t>(factors.size());
    std::copy(factors.begin(), factors.end(), factors_.begin());
}

OmegaMonomial OmegaMonomial::from_factors(int n, std::span<const OmegaPair> factors)
{
    OmegaMonomial m(n, factors, trusted);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& f = factors[i];
        if (f.a < 1 || f.a >= f.b || f.b > n)
            throw std::invalid_argument("not an admissible generator: w(" + std::to_string(f.a) + "," +
                                        std::to_string(f.b) + ")");
        if (i > 0 && factors[i - 1].b >= f.b)
            throw std::invalid_argument("second indices must be strictly increasing");
    }
    return m;
}

std::string OmegaMonomial::to_text() const
{
    if (len_ == 0) return "1";
    std::string out;
    for (std::size_t i = 0; i < len_; ++i) {
        if (i > 0) out += '*';
        out += "w(" + std::to_string(factors_[i].a) + "," + std::to_string(factors_[i].b) + ")";
    }
    return out;
}

OmegaMonomial OmegaMonomial::parse(int n, std::string_view text)
{
    auto raw = parse_raw_product(text);
    std::vector<OmegaPair> pairs;
    pairs.reserve(raw.size());
    for (const auto& r : raw) {
        if (r.a < 0 || r.b < 0 || r.a > max_points || r.b > max_points)
            throw std::invalid_argument("index out of range in '" + std::string(text) + "'");
        pairs.push_back({static_cast<std::uint8_t>(r.a), static_cast<std::uint8_t>(r.b)});
    }
    return from_factors(n, pairs);
}

bool operator==(const OmegaMonomial& l, const OmegaMonomial& r)
{
    return l.n_ == r.n_ && l.len_ == r.len_ && std::equal(l.factors_.begin(), l.factors_.begin() + l.len_,
                                                          r.factors_.begin());
}

std::strong_ordering operator<=>(const OmegaMonomial& l, const OmegaMonomial& r)
{
    if (auto c = l.n_ <=> r.n_; c != 0) return c;
    if (auto c = l.len_ <=> r.len_; c != 0) return c;
    for (std::size_t i = 0; i < l.len_; ++i)
        if (auto c = l.factors_[i] <=> r.factors_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::size_t OmegaMonomialHash::operator()(const OmegaMonomial& m) const noexcept
{
    std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(m.n());
    for (const auto& f : m.factors()) {
        h = (h ^ f.a) * 1099511628211ULL;
        h = (h ^ f.b) * 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
}

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(int n, std::size_t word_length) : n_(n), t_(word_length)
{
    if (n < 0 || n > OmegaMonomial::max_points) throw std::invalid_argument("point count out of range");
}

AlgebraElement AlgebraElement::unit(int n) { return from_monomial(OmegaMonomial(n)); }

AlgebraElement AlgebraElement::from_monomial(const OmegaMonomial& m, Rational coef)
{
    AlgebraElement x(m.n(), m.word_length());
    if (!coef.is_zero()) x.terms_.emplace_back(m, coef);
    return x;
}

AlgebraElement AlgebraElement::from_terms(int n, std::size_t word_length, std::vector<Term> terms)
{
    AlgebraElement x(n, word_length);
    for (const auto& [m, c] : terms)
        if (m.n() != n || m.word_length() != word_length)
            throw std::invalid_argument("term does not match element shape");
    std::sort(terms.begin(), terms.end(), [](const Term& l, const Term& r) { return l.first < r.first; });
    for (auto& term : terms) {
        if (!x.terms_.empty() && x.terms_.back().first == term.first)
            x.terms_.back().second += term.second;
        else
            x.terms_.push_back(std::move(term));
        if (x.terms_.back().second.is_zero()) x.terms_.pop_back();
    }
    return x;
}

Rational AlgebraElement::coefficient(const OmegaMonomial& m) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& term, const OmegaMonomial& key) { return term.first < key; });
    if (it != terms_.end() && it->first == m) return it->second;
    return 0;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs)
{
    if (rhs.n_ != n_ || rhs.t_ != t_) throw std::invalid_argument("adding elements of different shape");
    std::vector<Term> merged;
    merged.reserve(terms_.size() + rhs.terms_.size());
    auto l = terms_.begin();
    auto r = rhs.terms_.begin();
    while (l != terms_.end() || r != rhs.terms_.end()) {
        if (r == rhs.terms_.end() || (l != terms_.end() && l->first < r->first)) {
            merged.push_back(*l++);
        } else if (l == terms_.end() || r->first < l->first) {
            merged.push_back(*r++);
        } else {
            Rational c = l->second + r->second;
            if (!c.is_zero()) merged.emplace_back(l->first, c);
            ++l;
            ++r;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs)
{
    AlgebraElement neg = rhs;
    neg *= Rational(-1);
    return *this += neg;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& scalar)
{
    if (scalar.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& term : terms_) term.second *= scalar;
    return *this;
}

std::string AlgebraElement::to_text() const
{
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += '\n';
        out += c.to_string() + " " + m.to_text();
    }
    return out;
}

AlgebraElement AlgebraElement::parse(int n, std::string_view text)
{
    std::vector<Term> terms;
    std::optional<std::size_t> t;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
        if (line == "0") continue;
        auto space = line.find(' ');
        if (space == std::string::npos) throw std::invalid_argument("expected 'coef monomial': '" + line + "'");
        auto m = OmegaMonomial::parse(n, line.substr(space + 1));
        if (t && *t != m.word_length()) throw std::invalid_argument("mixed word lengths in element");
        t = m.word_length();
        terms.emplace_back(m, Rational::parse(line.substr(0, space)));
    }
    return from_terms(n, t.value_or(0), std::move(terms));
}

// ---------------------------------------------------------------------------
// Dimension and basis

std::uint64_t dimension(int n, int t)
{
    if (n < 0 || t < 0) throw std::invalid_argument("dimension requires n >= 0 and t >= 0");
    if (t == 0) return 1;
    if (t >= n) return 0;
    std::vector<unsigned __int128> coeffs(static_cast<std::size_t>(t) + 1, 0);
    coeffs[0] = 1;
    for (int i = 1; i < n; ++i)
        for (int j = std::min(i, t); j >= 1; --j) {
            coeffs[j] += static_cast<unsigned __int128>(i) * coeffs[j - 1];
            if (coeffs[j] > std::numeric_limits<std::uint64_t>::max())
                throw std::overflow_error("dimension exceeds 64 bits");
        }
    return static_cast<std::uint64_t>(coeffs[t]);
}

namespace {

void enumerate_rec(int n, int t, int next_b, std::vector<OmegaPair>& prefix, std::vector<OmegaMonomial>& out)
{
    if (static_cast<int>(prefix.size()) == t) {
        out.emplace_back(n, prefix, OmegaMonomial::trusted);
        return;
    }
    int remaining = t - static_cast<int>(prefix.size());
    for (int b = next_b; b <= n - remaining + 1; ++b)
        for (int a = 1; a < b; ++a) {
            prefix.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
            enumerate_rec(n, t, b + 1, prefix, out);
            prefix.pop_back();
        }
}

}  // namespace

std::vector<OmegaMonomial> enumerate_basis(int n, int t)
{
    if (n < 0 || t < 0) throw std::invalid_argument("enumerate_basis requires n >= 0 and t >= 0");
    if (static_cast<std::size_t>(t) > OmegaMonomial::max_word_length)
        throw std::invalid_argument("word length exceeds supported maximum");
    std::vector<OmegaMonomial> out;
    if (t >= n && t > 0) return out;
    out.reserve(static_cast<std::size_t>(dimension(n, t)));
    std::vector<OmegaPair> prefix;
    enumerate_rec(n, t, 2, prefix, out);
    return out;
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

struct Word {
    std::array<OmegaPair, OmegaMonomial::max_word_length> f{};
    std::uint8_t len = 0;
    std::int64_t coef = 1;
};

// Deterministic strategy: sort by (b, a), then eliminate the repeated second
// index that is largest. Each Arnold step lowers the multiset of second
// indices, so the recursion terminates.
void rewrite(int n, Word w, GenParity parity, std::vector<IntTerm>& out)
{
    const int swap = swap_sign(parity);
    for (std::size_t i = 1; i < w.len; ++i)
        for (std::size_t k = i; k > 0 && w.f[k] < w.f[k - 1]; --k) {
            std::swap(w.f[k], w.f[k - 1]);
            w.coef *= swap;
        }
    int repeated = -1;
    for (int k = static_cast<int>(w.len) - 2; k >= 0; --k) {
        if (w.f[k] == w.f[k + 1]) return;
        if (repeated < 0 && w.f[k].b == w.f[k + 1].b) repeated = k;
    }
    if (repeated < 0) {
        out.emplace_back(OmegaMonomial(n, std::span<const OmegaPair>(w.f.data(), w.len), OmegaMonomial::trusted),
                         w.coef);
        return;
    }
    // w(a,b) w(c,b) = w(a,c) w(c,b) + (-1)^d w(a,b) w(a,c)   for a < c < b
    const auto k = static_cast<std::size_t>(repeated);
    const std::uint8_t a = w.f[k].a;
    const std::uint8_t c = w.f[k + 1].a;
    const std::uint8_t b = w.f[k].b;
    Word first = w;
    first.f[k] = {a, c};
    first.f[k + 1] = {c, b};
    rewrite(n, first, parity, out);
    Word second = w;
    second.f[k] = {a, b};
    second.f[k + 1] = {a, c};
    second.coef *= orientation_sign(parity);
    rewrite(n, second, parity, out);
}

struct RandomWord {
    std::vector<OmegaPair> f;
    Rational coef = 1;
};

bool oriented(const OmegaPair& p) { return p.a < p.b; }

// Picks any applicable rule uniformly at random until no rule applies.
void rewrite_random(int n, RandomWord w, GenParity parity, std::mt19937_64& rng, std::vector<AlgebraElement::Term>& out)
{
    enum class Rule { orient, swap, kill, arnold };
    std::vector<std::pair<Rule, std::size_t>> moves;
    for (std::size_t i = 0; i < w.f.size(); ++i)
        if (!oriented(w.f[i])) moves.emplace_back(Rule::orient, i);
    for (std::size_t i = 0; i + 1 < w.f.size(); ++i) {
        const auto& x = w.f[i];
        const auto& y = w.f[i + 1];
        if (!oriented(x) || !oriented(y)) continue;
        if (x == y)
            moves.emplace_back(Rule::kill, i);
        else if (y < x)
            moves.emplace_back(Rule::swap, i);
        else if (x.b == y.b)
            moves.emplace_back(Rule::arnold, i);
    }
    if (moves.empty()) {
        out.emplace_back(OmegaMonomial(n, w.f, OmegaMonomial::trusted), w.coef);
        return;
    }
    auto [rule, i] = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    switch (rule) {
    case Rule::orient:
        std::swap(w.f[i].a, w.f[i].b);
        w.coef *= Rational(orientation_sign(parity));
        rewrite_random(n, std::move(w), parity, rng, out);
        return;
    case Rule::swap:
        std::swap(w.f[i], w.f[i + 1]);
        w.coef *= Rational(swap_sign(parity));
        rewrite_random(n, std::move(w), parity, rng, out);
        return;
    case Rule::kill:
        return;
    case Rule::arnold: {
        const std::uint8_t a = w.f[i].a;
        const std::uint8_t c = w.f[i + 1].a;
        const std::uint8_t b = w.f[i].b;
        RandomWord first = w;
        first.f[i] = {a, c};
        first.f[i + 1] = {c, b};
        RandomWord second = std::move(w);
        second.f[i] = {a, b};
        second.f[i + 1] = {a, c};
        second.coef *= Rational(orientation_sign(parity));
        if (std::bernoulli_distribution(0.5)(rng)) {
            rewrite_random(n, std::move(first), parity, rng, out);
            rewrite_random(n, std::move(second), parity, rng, out);
        } else {
            rewrite_random(n, std::move(second), parity, rng, out);
            rewrite_random(n, std::move(first), parity, rng, out);
        }
        return;
    }
    }
}

// Shared validation; returns false when the product vanishes trivially.
bool validate_raw(int n, std::span<const RawPair> raw)
{
    if (n < 0 || n > OmegaMonomial::max_points) throw std::invalid_argument("point count out of range");
    if (raw.size() > OmegaMonomial::max_word_length)
        throw std::invalid_argument("word length exceeds supported maximum");
    bool nonzero = true;
    for (const auto& p : raw) {
        if (p.a < 0 || p.b < 0 || p.a > n || p.b > n)
            throw std::invalid_argument("generator index out of range 0.." + std::to_string(n) + ": w(" +
                                        std::to_string(p.a) + "," + std::to_string(p.b) + ")");
        if (p.a == 0 || p.b == 0 || p.a == p.b) nonzero = false;
    }
    return nonzero;
}

}  // namespace

void accumulate_normal_form(int n, std::span<const OmegaPair> raw, GenParity parity, std::int64_t coef,
                            std::vector<IntTerm>& out)
{
    Word w;
    w.len = static_cast<std::uint8_t>(raw.size());
    w.coef = coef;
    const int orient = orientation_sign(parity);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        OmegaPair p = raw[i];
        if (p.a > p.b) {
            std::swap(p.a, p.b);
            w.coef *= orient;
        }
        w.f[i] = p;
    }
    rewrite(n, w, parity, out);
}

void merge_terms(std::vector<IntTerm>& terms)
{
    std::sort(terms.begin(), terms.end(), [](const IntTerm& l, const IntTerm& r) { return l.first < r.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (out > 0 && terms[out - 1].first == terms[i].first) {
            terms[out - 1].second += terms[i].second;
            if (terms[out - 1].second == 0) --out;
        } else if (terms[i].second != 0) {
            terms[out++] = terms[i];
        }
    }
    terms.resize(out);
}

AlgebraElement normal_form(int n, std::span<const RawPair> raw, GenParity parity)
{
    AlgebraElement zero(n, raw.size());
    if (!validate_raw(n, raw)) return zero;
    std::vector<OmegaPair> pairs;
    pairs.reserve(raw.size());
    for (const auto& p : raw) pairs.push_back({static_cast<std::uint8_t>(p.a), static_cast<std::uint8_t>(p.b)});
    std::vector<IntTerm> terms;
    accumulate_normal_form(n, pairs, parity, 1, terms);
    merge_terms(terms);
    std::vector<AlgebraElement::Term> out;
    out.reserve(terms.size());
    for (auto& [m, c] : terms) out.emplace_back(m, Rational(c));
    return AlgebraElement::from_terms(n, raw.size(), std::move(out));
}

AlgebraElement normal_form_randomized(int n, std::span<const RawPair> raw, GenParity parity, std::mt19937_64& rng)
{
    AlgebraElement zero(n, raw.size());
    if (!validate_raw(n, raw)) return zero;
    RandomWord w;
    for (const auto& p : raw) w.f.push_back({static_cast<std::uint8_t>(p.a), static_cast<std::uint8_t>(p.b)});
    std::vector<AlgebraElement::Term> out;
    rewrite_random(n, std::move(w), parity, rng, out);
    return AlgebraElement::from_terms(n, raw.size(), std::move(out));
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y, GenParity parity)
{
    if (x.n() != y.n()) throw std::invalid_argument("multiply: point counts differ");
    const std::size_t t = x.word_length() + y.word_length();
    if (t > OmegaMonomial::max_word_length) throw std::invalid_argument("word length exceeds supported maximum");
    std::map<OmegaMonomial, Rational> acc;
    std::vector<OmegaPair> raw;
    std::vector<IntTerm> terms;
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) {
            raw.assign(mx.factors().begin(), mx.factors().end());
            raw.insert(raw.end(), my.factors().begin(), my.factors().end());
            terms.clear();
            accumulate_normal_form(x.n(), raw, parity, 1, terms);
            Rational scale = cx * cy;
            for (const auto& [m, c] : terms) acc[m] += scale * Rational(c);
        }
    std::vector<AlgebraElement::Term> out(acc.begin(), acc.end());
    return AlgebraElement::from_terms(x.n(), t, std::move(out));
}

std::vector<RawPair> parse_raw_product(std::string_view text)
{
    std::vector<RawPair> out;
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty() || s == "1") return out;
    std::size_t pos = 0;
    auto fail = [&] { throw std::invalid_argument("malformed monomial: '" + std::string(text) + "'"); };
    while (true) {
        if (s.compare(pos, 2, "w(") != 0) fail();
        pos += 2;
        auto comma = s.find(',', pos);
        auto close = s.find(')', pos);
        if (comma == std::string::npos || close == std::string::npos || comma > close) fail();
        try {
            std::size_t used_a = 0;
            std::size_t used_b = 0;
            int a = std::stoi(s.substr(pos, comma - pos), &used_a);
            int b = std::stoi(s.substr(comma + 1, close - comma - 1), &used_b);
            if (used_a != comma - pos || used_b != close - comma - 1) fail();
            out.push_back({a, b});
        } catch (const std::logic_error&) {
            fail();
        }
        pos = close + 1;
        if (pos == s.size()) break;
        if (s[pos] != '*') fail();
        ++pos;
    }
    return out;
}

}  // namespace linkshom
