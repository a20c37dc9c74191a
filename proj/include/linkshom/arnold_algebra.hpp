#pragma once

// The graded-commutative algebra H^*(Conf(n, R^d); Q) in its Arnold
// presentation: generators w(a,b) of degree d-1 subject to
//   w(b,a) = (-1)^d w(a,b),   w(a,b)^2 = 0,
//   w(i,j)w(j,k) + w(j,k)w(k,i) + w(k,i)w(i,j) = 0.
// Elements are expanded in the admissible basis: products w(a1,b1)...w(at,bt)
// with a_i < b_i and b_1 < b_2 < ... < b_t.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linkshom/rational.hpp"

namespace linkshom {

/// Parity of the generator degree d-1. Odd parity means generators anticommute.
enum class GenParity { even, odd };

[[nodiscard]] GenParity parity_of_dimension(int d);
[[nodiscard]] std::string_view to_string(GenParity parity);

/// Sign picked up by w(b,a) -> w(a,b), i.e. (-1)^d.
[[nodiscard]] constexpr int orientation_sign(GenParity parity) { return parity == GenParity::odd ? 1 : -1; }
/// Koszul sign for swapping two adjacent generators.
[[nodiscard]] constexpr int swap_sign(GenParity parity) { return parity == GenParity::odd ? -1 : 1; }

/// An oriented generator w(a,b), a < b. Ordered by (b, a).
struct OmegaPair {
    std::uint8_t a = 0;
    std::uint8_t b = 0;

    friend constexpr bool operator==(const OmegaPair&, const OmegaPair&) = default;
    friend constexpr std::strong_ordering operator<=>(const OmegaPair& l, const OmegaPair& r)
    {
        if (auto c = l.b <=> r.b; c != 0) return c;
        return l.a <=> r.a;
    }
};

/// A generator as written by a caller: any orientation, indices in 0..n.
struct RawPair {
    int a = 0;
    int b = 0;
};

/// An admissible monomial in the Arnold algebra on n points.
class OmegaMonomial {
public:
    static constexpr std::size_t max_word_length = 12;
    static constexpr int max_points = 255;

    struct trusted_t {};
    static constexpr trusted_t trusted{};

    /// The unit monomial on n points.
    explicit OmegaMonomial(int n = 0);

    /// Validates admissibility; throws std::invalid_argument otherwise.
    static OmegaMonomial from_factors(int n, std::span<const OmegaPair> factors);

    /// Skips validation. Factors must already be admissible.
    OmegaMonomial(int n, std::span<const OmegaPair> factors, trusted_t);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] std::size_t word_length() const { return len_; }
    [[nodiscard]] std::span<const OmegaPair> factors() const { return {factors_.data(), len_}; }
    [[nodiscard]] long degree(int d) const { return static_cast<long>(len_) * (d - 1); }

    /// `w(1,2)*w(2,3)`; the unit renders as `1`.
    [[nodiscard]] std::string to_text() const;
    static OmegaMonomial parse(int n, std::string_view text);

    friend bool operator==(const OmegaMonomial& l, const OmegaMonomial& r);
    friend std::strong_ordering operator<=>(const OmegaMonomial& l, const OmegaMonomial& r);

private:
    std::uint8_t n_ = 0;
    std::uint8_t len_ = 0;
    std::array<OmegaPair, max_word_length> factors_{};
};

struct OmegaMonomialHash {
    std::size_t operator()(const OmegaMonomial& m) const noexcept;
};

/// A Q-linear combination of admissible monomials of one word length.
/// Terms are kept sorted by monomial with no zero coefficients.
class AlgebraElement {
public:
    using Term = std::pair<OmegaMonomial, Rational>;

    AlgebraElement(int n, std::size_t word_length);

    static AlgebraElement unit(int n);
    static AlgebraElement from_monomial(const OmegaMonomial& m, Rational coef = 1);
    /// Merges duplicates and drops zeros; all monomials must match n and t.
    static AlgebraElement from_terms(int n, std::size_t word_length, std::vector<Term> terms);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] std::size_t word_length() const { return t_; }
    [[nodiscard]] std::span<const Term> terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] Rational coefficient(const OmegaMonomial& m) const;

    AlgebraElement& operator+=(const AlgebraElement& rhs);
    AlgebraElement& operator-=(const AlgebraElement& rhs);
    AlgebraElement& operator*=(const Rational& scalar);
    friend AlgebraElement operator+(AlgebraElement l, const AlgebraElement& r) { return l += r; }
    friend AlgebraElement operator-(AlgebraElement l, const AlgebraElement& r) { return l -= r; }
    friend AlgebraElement operator*(const Rational& s, AlgebraElement x) { return x *= s; }
    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

    /// One `coef monomial` line per term; the zero element renders as `0`.
    [[nodiscard]] std::string to_text() const;
    static AlgebraElement parse(int n, std::string_view text);

private:
    int n_ = 0;
    std::size_t t_ = 0;
    std::vector<Term> terms_;
};

/// Coefficient of x^t in prod_{i=1}^{n-1} (1 + i x).
[[nodiscard]] std::uint64_t dimension(int n, int t);

/// All admissible monomials of word length t on n points, ascending.
[[nodiscard]] std::vector<OmegaMonomial> enumerate_basis(int n, int t);

/// Expands a raw product of generators in the admissible basis. Pairs with
/// a == b or touching the basepoint 0 make the product vanish.
[[nodiscard]] AlgebraElement normal_form(int n, std::span<const RawPair> raw, GenParity parity);

/// Same result as normal_form, but applies the rewrite rules (orientation,
/// adjacent swap, square-zero, Arnold) in an order drawn from rng.
[[nodiscard]] AlgebraElement normal_form_randomized(int n, std::span<const RawPair> raw, GenParity parity,
                                                    std::mt19937_64& rng);

[[nodiscard]] AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y, GenParity parity);

/// Parses `w(a,b)*w(c,d)` without orientation or ordering constraints.
[[nodiscard]] std::vector<RawPair> parse_raw_product(std::string_view text);

/// Integer-coefficient terms produced by the hot path; not merged.
using IntTerm = std::pair<OmegaMonomial, std::int64_t>;

/// Appends coef * normal_form(raw) to out without merging duplicates.
/// Every pair must satisfy 1 <= a, b <= n and a != b.
void accumulate_normal_form(int n, std::span<const OmegaPair> raw, GenParity parity, std::int64_t coef,
                            std::vector<IntTerm>& out);

/// Sorts and merges in place, dropping zero coefficients.
void merge_terms(std::vector<IntTerm>& terms);

}  // namespace linkshom
