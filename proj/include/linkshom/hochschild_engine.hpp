#pragma once

// The complex computing the wedge-of-spheres homology of H_*(Conf(-, R^d); Q).
//
// Level p of the simplicial model has P = m * C(p, n) non-base simplices, and
// contributes the word-length-t part of H^*(Conf(P, R^d)). The faces act as
// algebra maps whose alternating sum is the boundary; the degenerate span is
// quotiented out. Total degree is u = t(d-1) - p.
//
// Normalization. A degeneracy s_j is injective on non-base simplices and
// misses exactly those whose jump set contains j+1. It therefore sends
// admissible monomials to admissible monomials, and the degenerate span is
// the span of monomials whose touched simplices leave some position q in
// 1..p out of every jump set. The complementary "covering" monomials give a
// basis of the normalized quotient, and projecting onto it just drops the
// non-covering terms. The reference full-level mode computes the same
// quotient by linear algebra for small slices.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "linkshom/arnold_algebra.hpp"
#include "linkshom/betti_table.hpp"
#include "linkshom/exact_linalg.hpp"
#include "linkshom/rank_cache.hpp"
#include "linkshom/rational.hpp"
#include "linkshom/simplicial_wedge.hpp"

namespace linkshom {

enum class AssemblyMode { covering, full_level };

[[nodiscard]] std::string_view to_string(AssemblyMode mode);

struct SliceOptions {
    AssemblyMode mode = AssemblyMode::covering;
    /// Levels below p_min - 1 are only counted; homology starts at p_min.
    int p_min = 0;
    /// false: dimensions only, no boundary matrices.
    bool boundaries = true;
    bool check_square_zero = true;
    bool check_well_defined = true;
    /// Largest full level the reference mode agrees to build.
    std::uint64_t full_level_limit = 20'000;
};

struct SliceLevel {
    int p = 0;
    int points = 0;               // m * C(p, n)
    std::uint64_t full_dim = 0;   // dimension(points, t)
    std::uint64_t normalized_dim = 0;
    bool built = false;           // basis constructed, not just counted
};

/// A boundary map stored compactly when integral.
class BoundaryMatrix {
public:
    explicit BoundaryMatrix(SparseIntMatrix m) : m_(std::move(m)) {}
    explicit BoundaryMatrix(SparseRationalMatrix m) : m_(std::move(m)) {}

    [[nodiscard]] std::size_t rows() const;
    [[nodiscard]] std::size_t cols() const;
    [[nodiscard]] std::size_t nnz() const;
    [[nodiscard]] RankResult rank(const RankOptions& options) const;
    [[nodiscard]] SparseRationalMatrix to_rational() const;

private:
    std::variant<SparseIntMatrix, SparseRationalMatrix> m_;
};

struct ComplexSlice {
    int m = 0;
    int n = 1;
    int d = 0;
    int t = 0;
    int p_bound = 0;
    int p_min = 0;
    GenParity parity = GenParity::odd;
    AssemblyMode mode = AssemblyMode::covering;
    std::vector<SliceLevel> levels;  // p = 0..p_bound
    /// boundaries[p]: N_p -> N_{p-1}; present for built p >= max(1, p_min).
    std::vector<std::optional<BoundaryMatrix>> boundaries;
    /// dim N_{p_bound + 1} by counting, so the top homology is decidable.
    std::uint64_t dim_above = 0;
    bool square_zero_verified = false;
    bool well_defined_verified = false;
};

/// sum_j (-1)^j C(p, j) dimension(m C(p-j, n), t): inclusion-exclusion over
/// the positions a monomial fails to cover.
[[nodiscard]] std::uint64_t normalized_dimension_count(int m, int n, int p, int t);

/// Covering monomials at level p of X in word length t, ascending.
[[nodiscard]] std::vector<OmegaMonomial> normalized_basis(const PointedSimplicialSet& x, int p, int t);

/// Same set, counted without materializing it.
[[nodiscard]] std::uint64_t normalized_basis_size(const PointedSimplicialSet& x, int p, int t);

/// Builds the slice and runs its structural checks. Throws
/// InvariantViolation naming (m, n, d, t, p) on any failure.
[[nodiscard]] ComplexSlice assemble_slice(int m, int n, int d, int t, int p_bound, const SliceOptions& options = {});

struct HomologyDim {
    int p = 0;
    std::uint64_t dim = 0;
    friend bool operator==(const HomologyDim&, const HomologyDim&) = default;
};

/// dim H_p = dim N_p - rank d_p - rank d_{p+1} for p from p_min up to the
/// highest level whose outgoing and incoming boundaries are both known.
[[nodiscard]] std::vector<HomologyDim> homology_dims(const ComplexSlice& slice, const RankOptions& rank = {},
                                                     RankCache* cache = nullptr);

struct BettiOptions {
    std::optional<int> p_max;  // required for n >= 2
    RankOptions rank;
    AssemblyMode mode = AssemblyMode::covering;
    int jobs = 1;
    RankCache* cache = nullptr;
};

[[nodiscard]] BettiTable betti_table(int m, int n, int d, int u_max, const BettiOptions& options = {});

[[nodiscard]] std::string betti_to_json(const BettiTable& table);
[[nodiscard]] std::string betti_to_csv(const BettiTable& table);
[[nodiscard]] std::string betti_to_markdown(const BettiTable& table);

struct EulerRow {
    int t = 0;
    std::vector<std::uint64_t> dims;  // dim N_{p,t}, p = 0..2t
    std::int64_t computed = 0;        // sum_p (-1)^p dim N_{p,t}
    Rational expected;                // closed-form coefficient of x^{t(d-1)}
    int matched_sign = 0;             // +1, -1, or 0 when neither matches
    bool pass = false;
};

struct EulerReport {
    int m = 0;
    int d = 0;
    int t_max = 0;
    std::vector<EulerRow> rows;
    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] std::string to_json() const;
};

/// Compares alternating sums of enumerated normalized dimensions with the
/// closed-form Euler series (n = 1). Failures are reported, not thrown.
[[nodiscard]] EulerReport euler_check(int m, int d, int t_max, RankCache* cache = nullptr);

}  // namespace linkshom
