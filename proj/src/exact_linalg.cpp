#include "linkshom/exact_linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "linkshom/errors.hpp"

namespace linkshom {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// SparseRationalMatrix

SparseRationalMatrix::SparseRationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), col_ptr_(cols + 1, 0)
{
    if (rows > UINT32_MAX) throw std::invalid_argument("too many rows for sparse matrix");
}

SparseRationalMatrix SparseRationalMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                                         std::vector<Triplet> triplets)
{
    for (const auto& [r, c, v] : triplets)
        if (r >= rows || c >= cols) throw std::out_of_range("triplet index out of range");
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& l, const Triplet& r) {
        return std::tie(std::get<1>(l), std::get<0>(l)) < std::tie(std::get<1>(r), std::get<0>(r));
    });
    SparseRationalMatrix out(rows, 0);
    std::vector<Entry> column;
    std::size_t k = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        column.clear();
        for (; k < triplets.size() && std::get<1>(triplets[k]) == c; ++k) {
            auto row = static_cast<std::uint32_t>(std::get<0>(triplets[k]));
            if (!column.empty() && column.back().row == row)
                column.back().value += std::get<2>(triplets[k]);
            else
                column.push_back({row, std::get<2>(triplets[k])});
            if (column.back().value.is_zero()) column.pop_back();
        }
        out.append_column(column);
    }
    return out;
}

SparseRationalMatrix SparseRationalMatrix::identity(std::size_t n)
{
    SparseRationalMatrix out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        Entry e{static_cast<std::uint32_t>(i), Rational(1)};
        out.append_column({&e, 1});
    }
    return out;
}

std::span<const SparseRationalMatrix::Entry> SparseRationalMatrix::column(std::size_t c) const
{
    if (c >= cols()) throw std::out_of_range("column index out of range");
    return {entries_.data() + col_ptr_[c], col_ptr_[c + 1] - col_ptr_[c]};
}

Rational SparseRationalMatrix::at(std::size_t r, std::size_t c) const
{
    auto col = column(c);
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const Entry& e, std::size_t row) { return e.row < row; });
    if (it != col.end() && it->row == r) return it->value;
    return 0;
}

void SparseRationalMatrix::append_column(std::span<const Entry> column)
{
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (column[i].row >= rows_) throw std::out_of_range("entry row out of range");
        if (column[i].value.is_zero()) throw std::invalid_argument("explicit zero in sparse column");
        if (i > 0 && column[i - 1].row >= column[i].row) throw std::invalid_argument("column rows not ascending");
    }
    entries_.insert(entries_.end(), column.begin(), column.end());
    col_ptr_.push_back(entries_.size());
}

SparseRationalMatrix SparseRationalMatrix::transpose() const
{
    std::vector<std::vector<Entry>> rows(rows_);
    for (std::size_t c = 0; c < cols(); ++c)
        for (const auto& e : column(c)) rows[e.row].push_back({static_cast<std::uint32_t>(c), e.value});
    SparseRationalMatrix out(cols(), 0);
    for (const auto& r : rows) out.append_column(r);
    return out;
}

SparseRationalMatrix SparseRationalMatrix::select_columns(std::span<const std::size_t> cols) const
{
    SparseRationalMatrix out(rows_, 0);
    for (auto c : cols) out.append_column(column(c));
    return out;
}

SparseRationalMatrix operator*(const SparseRationalMatrix& a, const SparseRationalMatrix& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    SparseRationalMatrix out(a.rows(), 0);
    std::map<std::uint32_t, Rational> acc;
    std::vector<SparseRationalMatrix::Entry> column;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        acc.clear();
        for (const auto& eb : b.column(c))
            for (const auto& ea : a.column(eb.row)) acc[ea.row] += ea.value * eb.value;
        column.clear();
        for (const auto& [r, v] : acc)
            if (!v.is_zero()) column.push_back({r, v});
        out.append_column(column);
    }
    return out;
}

SparseRationalMatrix operator+(const SparseRationalMatrix& a, const SparseRationalMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum shape mismatch");
    SparseRationalMatrix out(a.rows(), 0);
    std::vector<SparseRationalMatrix::Entry> column;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        column.clear();
        auto ca = a.column(c);
        auto cb = b.column(c);
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < ca.size() || j < cb.size()) {
            if (j == cb.size() || (i < ca.size() && ca[i].row < cb[j].row)) {
                column.push_back(ca[i++]);
            } else if (i == ca.size() || cb[j].row < ca[i].row) {
                column.push_back(cb[j++]);
            } else {
                Rational v = ca[i].value + cb[j].value;
                if (!v.is_zero()) column.push_back({ca[i].row, v});
                ++i;
                ++j;
            }
        }
        out.append_column(column);
    }
    return out;
}

SparseRationalMatrix operator*(const Rational& s, const SparseRationalMatrix& a)
{
    SparseRationalMatrix out(a.rows(), 0);
    std::vector<SparseRationalMatrix::Entry> column;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        column.clear();
        if (!s.is_zero())
            for (const auto& e : a.column(c)) column.push_back({e.row, s * e.value});
        out.append_column(column);
    }
    return out;
}

std::string SparseRationalMatrix::to_text() const
{
    std::ostringstream out;
    out << rows_ << ' ' << cols() << '\n';
    for (std::size_t c = 0; c < cols(); ++c)
        for (const auto& e : column(c)) out << e.row << ' ' << c << ' ' << e.value << '\n';
    return out.str();
}

SparseRationalMatrix SparseRationalMatrix::parse(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::size_t rows = 0;
    std::size_t cols = 0;
    if (!(in >> rows >> cols)) throw std::invalid_argument("matrix text: missing 'rows cols' header");
    std::vector<Triplet> triplets;
    std::size_t r = 0;
    std::size_t c = 0;
    std::string value;
    while (in >> r) {
        if (!(in >> c >> value)) throw std::invalid_argument("matrix text: truncated triplet");
        triplets.emplace_back(r, c, Rational::parse(value));
    }
    if (!in.eof()) throw std::invalid_argument("matrix text: malformed triplet");
    return from_triplets(rows, cols, std::move(triplets));
}

std::string_view to_string(RankPolicy policy) { return policy == RankPolicy::exact ? "exact" : "multimodular"; }

// ---------------------------------------------------------------------------
// Primes

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

std::uint64_t reduce_mod(const Rational& v, std::uint64_t p)
{
    auto to_mod = [p](std::int64_t x) {
        auto r = static_cast<std::int64_t>(x % static_cast<std::int64_t>(p));
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
    };
    std::uint64_t den = to_mod(v.den());
    if (den == 0) throw std::logic_error("prime divides a denominator");
    return mul_mod(to_mod(v.num()), inverse_mod(den, p), p);
}

}  // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    // Deterministic witness set for 64-bit integers.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> select_primes(std::uint64_t seed, std::size_t count,
                                         std::span<const std::int64_t> denominators)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> draw(1ULL << 30U, (1ULL << 31U) - 1);
    std::vector<std::uint64_t> primes;
    while (primes.size() < count) {
        std::uint64_t candidate = draw(rng) | 1U;
        while (!is_prime(candidate)) candidate += 2;
        if (std::find(primes.begin(), primes.end(), candidate) != primes.end()) continue;
        bool divides = std::any_of(denominators.begin(), denominators.end(), [candidate](std::int64_t den) {
            return den % static_cast<std::int64_t>(candidate) == 0;
        });
        if (divides) continue;
        primes.push_back(candidate);
    }
    return primes;
}

// ---------------------------------------------------------------------------
// SparseIntMatrix

SparseIntMatrix::SparseIntMatrix(std::size_t rows) : rows_(rows), col_ptr_(1, 0)
{
    if (rows > UINT32_MAX) throw std::invalid_argument("too many rows for sparse matrix");
}

std::span<const SparseIntMatrix::Entry> SparseIntMatrix::column(std::size_t c) const
{
    if (c >= cols()) throw std::out_of_range("column index out of range");
    return {entries_.data() + col_ptr_[c], col_ptr_[c + 1] - col_ptr_[c]};
}

void SparseIntMatrix::append_column(std::span<const Entry> column)
{
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (column[i].row >= rows_) throw std::out_of_range("entry row out of range");
        if (column[i].value == 0) throw std::invalid_argument("explicit zero in sparse column");
        if (i > 0 && column[i].row <= column[i - 1].row)
            throw std::invalid_argument("sparse column rows must be strictly increasing");
    }
    entries_.insert(entries_.end(), column.begin(), column.end());
    col_ptr_.push_back(entries_.size());
}

void SparseIntMatrix::reserve(std::size_t cols, std::size_t nnz)
{
    col_ptr_.reserve(cols + 1);
    entries_.reserve(nnz);
}

SparseRationalMatrix SparseIntMatrix::to_rational() const
{
    SparseRationalMatrix out(rows_, 0);
    std::vector<SparseRationalMatrix::Entry> col;
    for (std::size_t c = 0; c < cols(); ++c) {
        col.clear();
        for (const auto& e : column(c)) col.push_back({e.row, Rational(e.value)});
        out.append_column(col);
    }
    return out;
}

SparseIntMatrix SparseIntMatrix::from_rational(const SparseRationalMatrix& a)
{
    SparseIntMatrix out(a.rows());
    std::vector<Entry> col;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        col.clear();
        for (const auto& e : a.column(c)) {
            if (!e.value.is_integer() || e.value.num() > INT32_MAX || e.value.num() < INT32_MIN)
                throw std::invalid_argument("entry does not fit a 32-bit integer matrix");
            col.push_back({e.row, static_cast<std::int32_t>(e.value.num())});
        }
        out.append_column(col);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

struct ModEntry {
    std::uint32_t row;
    std::uint32_t value;
};
using ModColumn = std::vector<ModEntry>;

struct BigEntry {
    std::uint32_t row;
    BigInt value;
};
using BigColumn = std::vector<BigEntry>;

// Column reduction keyed on the largest row index of each column. Each
// reduced column with a fresh leading row contributes one to the rank.
template <class Column, class Reduce>
std::size_t reduce_columns(std::size_t rows, std::vector<Column> columns, Reduce&& reduce)
{
    std::stable_sort(columns.begin(), columns.end(),
                     [](const Column& l, const Column& r) { return l.size() < r.size(); });
    std::vector<std::int64_t> pivot_of_row(rows, -1);
    std::vector<Column> pivots;
    for (auto& col : columns) {
        while (!col.empty()) {
            auto lead = col.back().row;
            if (pivot_of_row[lead] < 0) {
                pivot_of_row[lead] = static_cast<std::int64_t>(pivots.size());
                pivots.push_back(std::move(col));
                break;
            }
            reduce(col, pivots[static_cast<std::size_t>(pivot_of_row[lead])]);
        }
        Column().swap(col);
    }
    return pivots.size();
}

// Primes are below 2^31, so products fit in 64 bits.
std::size_t rank_mod_columns(std::size_t rows, std::vector<ModColumn> columns, std::uint64_t prime)
{
    ModColumn scratch;
    auto reduce = [&](ModColumn& col, const ModColumn& pivot) {
        // col -= (col_lead / pivot_lead) * pivot
        std::uint64_t factor = col.back().value * inverse_mod(pivot.back().value, prime) % prime;
        std::uint64_t neg = prime - factor;
        scratch.clear();
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < col.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < col.size() && col[i].row < pivot[j].row)) {
                scratch.push_back(col[i++]);
            } else if (i == col.size() || pivot[j].row < col[i].row) {
                scratch.push_back({pivot[j].row, static_cast<std::uint32_t>(neg * pivot[j].value % prime)});
                ++j;
            } else {
                std::uint64_t v = (col[i].value + neg * pivot[j].value) % prime;
                if (v != 0) scratch.push_back({col[i].row, static_cast<std::uint32_t>(v)});
                ++i;
                ++j;
            }
        }
        col.swap(scratch);
    };
    return reduce_columns(rows, std::move(columns), reduce);
}

std::size_t rank_big_columns(std::size_t rows, std::vector<BigColumn> columns)
{
    BigColumn scratch;
    auto reduce = [&](BigColumn& col, const BigColumn& pivot) {
        // col <- p * col - c * pivot with p, c the leading entries, then
        // divide out the content to keep entries small.
        const BigInt p = pivot.back().value;
        const BigInt c = col.back().value;
        scratch.clear();
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < col.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < col.size() && col[i].row < pivot[j].row)) {
                scratch.push_back({col[i].row, p * col[i].value});
                ++i;
            } else if (i == col.size() || pivot[j].row < col[i].row) {
                scratch.push_back({pivot[j].row, -c * pivot[j].value});
                ++j;
            } else {
                BigInt v = p * col[i].value - c * pivot[j].value;
                if (v != 0) scratch.push_back({col[i].row, std::move(v)});
                ++i;
                ++j;
            }
        }
        BigInt content = 0;
        for (const auto& e : scratch) content = boost::multiprecision::gcd(content, e.value);
        if (content > 1)
            for (auto& e : scratch) e.value /= content;
        col.swap(scratch);
    };
    return reduce_columns(rows, std::move(columns), reduce);
}

std::uint32_t int_mod(std::int64_t x, std::uint64_t p)
{
    auto r = x % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

template <class Matrix>
RankResult rank_with_policy(const Matrix& a, const RankOptions& options, std::vector<std::int64_t> denominators)
{
    RankResult result;
    result.method = options.policy;
    if (options.policy == RankPolicy::exact) {
        result.rank = rank_exact(a);
        result.verified = true;
        return result;
    }
    std::sort(denominators.begin(), denominators.end());
    denominators.erase(std::unique(denominators.begin(), denominators.end()), denominators.end());
    result.primes_used = select_primes(options.seed, std::max<std::size_t>(options.num_primes, 2), denominators);
    for (auto p : result.primes_used) result.rank = std::max(result.rank, rank_mod_prime(a, p));
    if (options.cross_check) {
        std::size_t exact = rank_exact(a);
        if (exact != result.rank)
            throw InvariantViolation("multimodular rank " + std::to_string(result.rank) +
                                     " disagrees with exact rank " + std::to_string(exact));
        result.verified = true;
    }
    return result;
}

}  // namespace

std::size_t rank_mod_prime(const SparseRationalMatrix& a, std::uint64_t prime)
{
    if (prime >= (1ULL << 31U)) throw std::invalid_argument("modular ranks need a prime below 2^31");
    std::vector<ModColumn> columns;
    columns.reserve(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        ModColumn col;
        for (const auto& e : a.column(c)) {
            auto v = static_cast<std::uint32_t>(reduce_mod(e.value, prime));
            if (v != 0) col.push_back({e.row, v});
        }
        if (!col.empty()) columns.push_back(std::move(col));
    }
    return rank_mod_columns(a.rows(), std::move(columns), prime);
}

std::size_t rank_mod_prime(const SparseIntMatrix& a, std::uint64_t prime)
{
    if (prime >= (1ULL << 31U)) throw std::invalid_argument("modular ranks need a prime below 2^31");
    std::vector<ModColumn> columns;
    columns.reserve(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        ModColumn col;
        for (const auto& e : a.column(c)) {
            auto v = int_mod(e.value, prime);
            if (v != 0) col.push_back({e.row, v});
        }
        if (!col.empty()) columns.push_back(std::move(col));
    }
    return rank_mod_columns(a.rows(), std::move(columns), prime);
}

std::size_t rank_exact(const SparseRationalMatrix& a)
{
    std::vector<BigColumn> columns;
    columns.reserve(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        auto src = a.column(c);
        if (src.empty()) continue;
        BigInt lcm = 1;
        for (const auto& e : src) lcm = boost::multiprecision::lcm(lcm, BigInt(e.value.den()));
        BigColumn col;
        for (const auto& e : src) col.push_back({e.row, BigInt(e.value.num()) * (lcm / e.value.den())});
        columns.push_back(std::move(col));
    }
    return rank_big_columns(a.rows(), std::move(columns));
}

std::size_t rank_exact(const SparseIntMatrix& a)
{
    std::vector<BigColumn> columns;
    columns.reserve(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        auto src = a.column(c);
        if (src.empty()) continue;
        BigColumn col;
        for (const auto& e : src) col.push_back({e.row, BigInt(e.value)});
        columns.push_back(std::move(col));
    }
    return rank_big_columns(a.rows(), std::move(columns));
}

RankResult rank(const SparseRationalMatrix& a, const RankOptions& options)
{
    std::vector<std::int64_t> denominators;
    for (std::size_t c = 0; c < a.cols(); ++c)
        for (const auto& e : a.column(c))
            if (e.value.den() != 1) denominators.push_back(e.value.den());
    return rank_with_policy(a, options, std::move(denominators));
}

RankResult rank(const SparseIntMatrix& a, const RankOptions& options) { return rank_with_policy(a, options, {}); }

// ---------------------------------------------------------------------------
// Quotients

QuotientBasis quotient_basis(std::size_t ambient_dim, const SparseRationalMatrix& span)
{
    if (span.rows() != ambient_dim) throw std::invalid_argument("span must have ambient_dim rows");
    using Vec = std::map<std::uint32_t, Rational>;
    // Reduced basis: pivot row -> vector with 1 at the pivot and 0 at every
    // other pivot row.
    std::map<std::uint32_t, Vec> basis;
    for (std::size_t c = 0; c < span.cols(); ++c) {
        Vec v;
        for (const auto& e : span.column(c)) v[e.row] = e.value;
        for (const auto& [pivot, b] : basis) {
            auto it = v.find(pivot);
            if (it == v.end()) continue;
            Rational f = it->second;
            for (const auto& [r, x] : b) {
                auto& slot = v[r];
                slot -= f * x;
                if (slot.is_zero()) v.erase(r);
            }
        }
        if (v.empty()) continue;
        auto [pivot, lead] = *v.rbegin();
        for (auto& [r, x] : v) x /= lead;
        for (auto& [other, b] : basis) {
            auto it = b.find(pivot);
            if (it == b.end()) continue;
            Rational f = it->second;
            for (const auto& [r, x] : v) {
                auto& slot = b[r];
                slot -= f * x;
                if (slot.is_zero()) b.erase(r);
            }
        }
        basis.emplace(pivot, std::move(v));
    }

    QuotientBasis out;
    out.ambient_dim = ambient_dim;
    std::vector<std::int64_t> index_in_complement(ambient_dim, -1);
    for (std::size_t i = 0; i < ambient_dim; ++i)
        if (!basis.contains(static_cast<std::uint32_t>(i))) {
            index_in_complement[i] = static_cast<std::int64_t>(out.complement.size());
            out.complement.push_back(i);
        }
    out.projection = SparseRationalMatrix(out.complement.size(), 0);
    std::vector<SparseRationalMatrix::Entry> column;
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        column.clear();
        if (index_in_complement[i] >= 0) {
            column.push_back({static_cast<std::uint32_t>(index_in_complement[i]), Rational(1)});
        } else {
            // e_i is congruent to e_i - b_i, which lives on the complement.
            for (const auto& [r, x] : basis.at(static_cast<std::uint32_t>(i)))
                if (r != i) column.push_back({static_cast<std::uint32_t>(index_in_complement[r]), -x});
        }
        out.projection.append_column(column);
    }
    out.span_basis = SparseRationalMatrix(ambient_dim, 0);
    for (const auto& [pivot, b] : basis) {
        column.clear();
        for (const auto& [r, x] : b) column.push_back({r, x});
        out.span_basis.append_column(column);
    }
    return out;
}

SparseRationalMatrix descend(const SparseRationalMatrix& b, const QuotientBasis& src, const QuotientBasis& dst)
{
    if (b.cols() != src.ambient_dim || b.rows() != dst.ambient_dim)
        throw std::invalid_argument("descend: boundary shape does not match quotients");
    if (!(dst.projection * (b * src.span_basis)).is_zero())
        throw InvariantViolation("boundary does not map the source span into the target span");
    return dst.projection * b.select_columns(src.complement);
}

}  // namespace linkshom
