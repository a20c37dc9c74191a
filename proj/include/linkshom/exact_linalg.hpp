#pragma once

// Exact linear algebra over Q for sparse matrices. Ranks are multimodular
// or fraction-free; quotients by a span carry the maps induced on them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "linkshom/rational.hpp"

namespace linkshom {

/// Column-compressed sparse matrix with exact rational entries.
/// Entries within a column are sorted by row; zeros are never stored.
class SparseRationalMatrix {
public:
    struct Entry {
        std::uint32_t row = 0;
        Rational value;
        friend bool operator==(const Entry&, const Entry&) = default;
    };
    using Triplet = std::tuple<std::size_t, std::size_t, Rational>;

    SparseRationalMatrix() : SparseRationalMatrix(0, 0) {}
    SparseRationalMatrix(std::size_t rows, std::size_t cols);

    /// Duplicate (row, col) entries are summed.
    static SparseRationalMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
    static SparseRationalMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return col_ptr_.size() - 1; }
    [[nodiscard]] std::size_t nnz() const { return entries_.size(); }
    [[nodiscard]] std::span<const Entry> column(std::size_t c) const;
    [[nodiscard]] Rational at(std::size_t r, std::size_t c) const;
    [[nodiscard]] bool is_zero() const { return entries_.empty(); }

    /// Appends one column. Entries must be sorted by row, in range and nonzero.
    void append_column(std::span<const Entry> column);

    [[nodiscard]] SparseRationalMatrix transpose() const;
    /// Columns selected in the given order.
    [[nodiscard]] SparseRationalMatrix select_columns(std::span<const std::size_t> cols) const;

    friend SparseRationalMatrix operator*(const SparseRationalMatrix& a, const SparseRationalMatrix& b);
    friend SparseRationalMatrix operator+(const SparseRationalMatrix& a, const SparseRationalMatrix& b);
    friend SparseRationalMatrix operator*(const Rational& s, const SparseRationalMatrix& a);
    friend bool operator==(const SparseRationalMatrix&, const SparseRationalMatrix&) = default;

    /// Interchange format: `rows cols` header, then one `r c p/q` line per entry.
    [[nodiscard]] std::string to_text() const;
    static SparseRationalMatrix parse(std::string_view text);

private:
    std::size_t rows_ = 0;
    std::vector<std::size_t> col_ptr_;
    std::vector<Entry> entries_;
};

/// Column-compressed matrix with small integer entries. Boundary maps of the
/// normalized complex are integral, so this halves their footprint.
class SparseIntMatrix {
public:
    struct Entry {
        std::uint32_t row = 0;
        std::int32_t value = 0;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    explicit SparseIntMatrix(std::size_t rows = 0);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return col_ptr_.size() - 1; }
    [[nodiscard]] std::size_t nnz() const { return entries_.size(); }
    [[nodiscard]] std::span<const Entry> column(std::size_t c) const;

    /// Entries must be sorted by row, in range and nonzero.
    void append_column(std::span<const Entry> column);
    void reserve(std::size_t cols, std::size_t nnz);

    [[nodiscard]] SparseRationalMatrix to_rational() const;
    /// Throws std::invalid_argument unless every entry is a 32-bit integer.
    static SparseIntMatrix from_rational(const SparseRationalMatrix& a);

    friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<std::size_t> col_ptr_;
    std::vector<Entry> entries_;
};

enum class RankPolicy { multimodular, exact };

[[nodiscard]] std::string_view to_string(RankPolicy policy);

struct RankOptions {
    RankPolicy policy = RankPolicy::multimodular;
    std::uint64_t seed = 0;
    std::size_t num_primes = 2;
    /// Also run the fraction-free elimination and require agreement.
    bool cross_check = false;
};

struct RankResult {
    std::size_t rank = 0;
    RankPolicy method = RankPolicy::multimodular;
    std::vector<std::uint64_t> primes_used;
    bool verified = false;
};

/// Deterministically draws `count` distinct primes in [2^30, 2^31) from
/// `seed`, skipping any prime that divides one of the denominators.
[[nodiscard]] std::vector<std::uint64_t> select_primes(std::uint64_t seed, std::size_t count,
                                                       std::span<const std::int64_t> denominators);

[[nodiscard]] bool is_prime(std::uint64_t n);

/// Rank over Z/p. The prime must not divide any denominator.
/// Primes must lie below 2^31.
[[nodiscard]] std::size_t rank_mod_prime(const SparseRationalMatrix& a, std::uint64_t prime);
[[nodiscard]] std::size_t rank_mod_prime(const SparseIntMatrix& a, std::uint64_t prime);

/// Rank over Q by fraction-free elimination on big integers.
[[nodiscard]] std::size_t rank_exact(const SparseRationalMatrix& a);
[[nodiscard]] std::size_t rank_exact(const SparseIntMatrix& a);

/// Modular ranks never exceed the rational rank, so the multimodular policy
/// reports the maximum over its primes.
[[nodiscard]] RankResult rank(const SparseRationalMatrix& a, const RankOptions& options = {});
[[nodiscard]] RankResult rank(const SparseIntMatrix& a, const RankOptions& options = {});

/// A basis of V / span(S) given by coordinate vectors, and the projection
/// onto it.
struct QuotientBasis {
    std::size_t ambient_dim = 0;
    /// Coordinates whose classes form a basis of the quotient, ascending.
    std::vector<std::size_t> complement;
    /// |complement| x ambient_dim; sends v to its quotient coordinates.
    SparseRationalMatrix projection;
    /// ambient_dim x rank; a reduced column echelon basis of the span.
    SparseRationalMatrix span_basis;
};

[[nodiscard]] QuotientBasis quotient_basis(std::size_t ambient_dim, const SparseRationalMatrix& span);

/// The map induced by b on quotients. Throws InvariantViolation unless b maps
/// span(src) into span(dst).
[[nodiscard]] SparseRationalMatrix descend(const SparseRationalMatrix& b, const QuotientBasis& src,
                                           const QuotientBasis& dst);

}  // namespace linkshom
