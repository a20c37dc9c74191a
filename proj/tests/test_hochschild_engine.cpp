#include <doctest.h>

#include <filesystem>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "linkshom/errors.hpp"
#include "linkshom/hochschild_engine.hpp"
#include "linkshom/series_tools.hpp"

using namespace linkshom;

namespace {

using Big = boost::multiprecision::cpp_rational;

// Dense Gaussian elimination over big rationals, independent of the sparse
// rank code under test.
std::size_t dense_rank(const SparseRationalMatrix& m)
{
    std::vector<std::vector<Big>> a(m.rows(), std::vector<Big>(m.cols()));
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& e : m.column(c)) a[e.row][c] = Big(e.value.num(), e.value.den());
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && a[pivot][c] == 0) ++pivot;
        if (pivot == m.rows()) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            if (a[r][c] == 0) continue;
            Big f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < m.cols(); ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

// Homology of a full slice (p = 0..2t, nothing above) from dense ranks.
std::vector<std::int64_t> dense_homology(const ComplexSlice& s)
{
    const int top = s.p_bound;
    std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 2, 0);
    for (int p = 1; p <= top; ++p)
        if (s.boundaries[static_cast<std::size_t>(p)]) ranks[static_cast<std::size_t>(p)] =
            dense_rank(s.boundaries[static_cast<std::size_t>(p)]->to_rational());
    std::vector<std::int64_t> h;
    for (int p = 0; p <= top; ++p)
        h.push_back(static_cast<std::int64_t>(s.levels[static_cast<std::size_t>(p)].normalized_dim) -
                    static_cast<std::int64_t>(ranks[static_cast<std::size_t>(p)]) -
                    static_cast<std::int64_t>(ranks[static_cast<std::size_t>(p) + 1]));
    return h;
}

std::vector<std::uint64_t> normalized_dims(const ComplexSlice& s)
{
    std::vector<std::uint64_t> out;
    for (const auto& l : s.levels) out.push_back(l.normalized_dim);
    return out;
}

std::vector<std::uint64_t> homology_vector(const ComplexSlice& s)
{
    std::vector<std::uint64_t> out(s.levels.size(), 0);
    for (const auto& h : homology_dims(s)) out[static_cast<std::size_t>(h.p)] = h.dim;
    return out;
}

}  // namespace

TEST_CASE("word length zero is a point in degree zero")
{
    for (int m = 0; m <= 3; ++m) {
        auto s = assemble_slice(m, 1, 7, 0, 3);
        CHECK(normalized_dims(s) == std::vector<std::uint64_t>{1, 0, 0, 0});
        auto h = homology_dims(s);
        REQUIRE(!h.empty());
        CHECK(h[0] == HomologyDim{0, 1});
        for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i].dim == 0);
    }
}

TEST_CASE("knot slice in word length one")
{
    for (int d : {6, 7}) {
        auto s = assemble_slice(1, 1, d, 1, 2);
        CHECK(normalized_dims(s) == std::vector<std::uint64_t>{0, 0, 1});
        CHECK(s.levels[2].points == 2);
        CHECK(s.dim_above == 0);
        CHECK(s.square_zero_verified);
        CHECK(s.well_defined_verified);
        CHECK(s.boundaries[2]->nnz() == 0);
        CHECK(homology_vector(s) == std::vector<std::uint64_t>{0, 0, 1});
    }
}

TEST_CASE("full-level dimensions for two strands")
{
    SliceOptions full;
    full.mode = AssemblyMode::full_level;
    auto s = assemble_slice(2, 1, 7, 1, 2, full);
    CHECK(s.levels[1].points == 2);
    CHECK(s.levels[1].full_dim == 1);
    CHECK(s.levels[2].points == 4);
    CHECK(s.levels[2].full_dim == 6);
}

TEST_CASE("covering basis agrees with the linear-algebra quotient")
{
    SliceOptions full;
    full.mode = AssemblyMode::full_level;
    for (int m = 1; m <= 2; ++m)
        for (int t = 0; t <= 2; ++t)
            for (int d : {6, 7}) {
                CAPTURE(m);
                CAPTURE(t);
                CAPTURE(d);
                auto a = assemble_slice(m, 1, d, t, 2 * t);
                auto b = assemble_slice(m, 1, d, t, 2 * t, full);
                CHECK(b.square_zero_verified);
                CHECK(normalized_dims(a) == normalized_dims(b));
                auto ha = homology_vector(a);
                CHECK(ha == homology_vector(b));
                auto dense = dense_homology(b);
                for (std::size_t p = 0; p < ha.size(); ++p) CHECK(dense[p] == static_cast<std::int64_t>(ha[p]));
            }
}

TEST_CASE("two-dimensional spheres agree with the reference mode")
{
    SliceOptions full;
    full.mode = AssemblyMode::full_level;
    // Full levels grow like C(p, 2) points, so t = 2 stops at p = 6.
    for (int t = 1; t <= 2; ++t) {
        const int p_bound = t == 1 ? 4 : 6;
        auto a = assemble_slice(1, 2, 7, t, p_bound);
        auto b = assemble_slice(1, 2, 7, t, p_bound, full);
        CHECK(normalized_dims(a) == normalized_dims(b));
        CHECK(homology_vector(a) == homology_vector(b));
    }
}

TEST_CASE("counted, enumerated and d-independent dimensions")
{
    for (int n = 1; n <= 2; ++n)
        for (int m = 1; m <= 3; ++m) {
            PointedSimplicialSet x(m, n, 8);
            for (int t = 0; t <= 3; ++t)
                for (int p = 0; p <= 8; ++p) {
                    if (m * binomial(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(n)) > 30) continue;
                    const auto count = normalized_dimension_count(m, n, p, t);
                    CHECK(normalized_basis_size(x, p, t) == count);
                    if (count < 5000) CHECK(normalized_basis(x, p, t).size() == count);
                    if (n == 1 && p > 2 * t) CHECK(count == 0);
                }
        }
    SliceOptions dims_only;
    dims_only.boundaries = false;
    for (int t = 0; t <= 3; ++t) {
        auto a = assemble_slice(2, 1, 6, t, 2 * t, dims_only);
        auto b = assemble_slice(2, 1, 7, t, 2 * t, dims_only);
        CHECK(normalized_dims(a) == normalized_dims(b));
    }
}

TEST_CASE("Euler characteristic survives taking homology")
{
    for (int m = 1; m <= 3; ++m)
        for (int t = 0; t <= (m == 3 ? 2 : 3); ++t)
            for (int d : {6, 7}) {
                auto s = assemble_slice(m, 1, d, t, 2 * t);
                std::int64_t chi_n = 0;
                std::int64_t chi_h = 0;
                for (const auto& l : s.levels) chi_n += (l.p % 2 ? -1 : 1) * static_cast<std::int64_t>(l.normalized_dim);
                for (const auto& h : homology_dims(s)) chi_h += (h.p % 2 ? -1 : 1) * static_cast<std::int64_t>(h.dim);
                CHECK(chi_n == chi_h);
                CHECK(Rational(std::abs(chi_n)) == euler_coefficient_closed_form(m, t));
            }
}

TEST_CASE("Euler report")
{
    auto r = euler_check(2, 7, 3);
    CHECK(r.all_pass());
    REQUIRE(r.rows.size() == 4);
    for (int t = 0; t <= 3; ++t) {
        CHECK(r.rows[static_cast<std::size_t>(t)].expected == Rational((std::int64_t{2} << t) - 1));
        CHECK(r.rows[static_cast<std::size_t>(t)].matched_sign == 1);
        CHECK(r.rows[static_cast<std::size_t>(t)].dims.size() == static_cast<std::size_t>(2 * t + 3));
    }
    CHECK(r.rows[1].computed == 3);
    CHECK(r.to_json() == euler_check(2, 7, 3).to_json());
    auto doc = nlohmann::json::parse(r.to_json());
    CHECK(doc["m"] == 2);
}

TEST_CASE("knot Betti table")
{
    auto table = betti_table(1, 1, 7, 4);
    REQUIRE(table.entries.size() == 5);
    const std::vector<std::uint64_t> expected{1, 0, 0, 0, 1};
    for (int u = 0; u <= 4; ++u) {
        CHECK(table.entries[static_cast<std::size_t>(u)].betti == expected[static_cast<std::size_t>(u)]);
        CHECK(table.entries[static_cast<std::size_t>(u)].complete);
    }
    CHECK(table.p_bound_policy == "2t");
    CHECK(table.rank_method == "multimodular");
    BettiOptions exact;
    exact.rank.policy = RankPolicy::exact;
    auto e = betti_table(1, 1, 7, 4, exact);
    CHECK(e.entries == table.entries);
    CHECK(e.rank_method == "exact");
    BettiOptions parallel;
    parallel.jobs = 3;
    CHECK(betti_table(1, 1, 7, 4, parallel).entries == table.entries);
    CHECK(poincare_series(table, 4).coeffs == std::vector<Rational>{1, 0, 0, 0, 1});
}

TEST_CASE("the empty link is a point")
{
    auto table = betti_table(0, 1, 7, 6);
    for (const auto& e : table.entries) {
        CHECK(e.complete);
        CHECK(e.betti == (e.u == 0 ? 1u : 0u));
    }
    CHECK(poincare_series(table, 6).coeffs == std::vector<Rational>{1, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("truncation flags")
{
    BettiOptions user;
    user.p_max = 2;
    auto table = betti_table(1, 2, 9, 8, user);
    CHECK(table.p_bound_policy == "user");
    for (const auto& e : table.entries) CHECK_FALSE(e.complete);
    CHECK_THROWS_AS(poincare_series(table, 0), std::invalid_argument);
    auto cut = betti_table(1, 1, 7, 10, user);
    CHECK(cut.entries[0].complete);
    CHECK(cut.entries[4].complete);
    bool some_incomplete = false;
    for (const auto& e : cut.entries) some_incomplete |= !e.complete;
    CHECK(some_incomplete);
}

TEST_CASE("argument validation")
{
    CHECK_THROWS_AS(betti_table(2, 2, 9, 4), std::invalid_argument);
    CHECK_THROWS_AS(betti_table(-1, 1, 7, 4), std::invalid_argument);
    CHECK_THROWS_AS(betti_table(1, 1, 3, 4), std::invalid_argument);
    CHECK_THROWS_AS(betti_table(1, 1, 7, -1), std::invalid_argument);
    CHECK_THROWS_AS(assemble_slice(1, 0, 7, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(assemble_slice(1, 1, 2, 1, 2), std::invalid_argument);
    SliceOptions full;
    full.mode = AssemblyMode::full_level;
    full.full_level_limit = 10;
    CHECK_THROWS_AS(assemble_slice(2, 1, 7, 2, 4, full), std::invalid_argument);
}

TEST_CASE("cache hits reproduce results exactly")
{
    const auto dir = std::filesystem::temp_directory_path() / "linkshom_engine_cache_test";
    std::filesystem::remove_all(dir);
    BettiOptions opts;
    RankCache cold(dir);
    opts.cache = &cold;
    auto first = betti_table(2, 1, 7, 8, opts);
    CHECK(cold.misses() > 0);
    RankCache warm(dir);
    opts.cache = &warm;
    auto second = betti_table(2, 1, 7, 8, opts);
    CHECK(warm.hits() > 0);
    CHECK(warm.misses() == 0);
    CHECK(betti_to_json(first) == betti_to_json(second));
    // Dimensions are shared across d of the same parity of d - 1.
    RankCache other(dir);
    opts.cache = &other;
    static_cast<void>(betti_table(2, 1, 9, 8, opts));
    CHECK(other.hits() > 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("renderers carry the same numbers")
{
    auto table = betti_table(1, 1, 7, 4);
    auto doc = nlohmann::json::parse(betti_to_json(table));
    CHECK(doc["m"] == 1);
    CHECK(doc["entries"].size() == 5);
    CHECK(doc["entries"][4]["betti"] == 1);
    CHECK(doc["p_bound_policy"] == "2t");
    const auto csv = betti_to_csv(table);
    CHECK(csv.find("u,betti,complete") != std::string::npos);
    CHECK(csv.find("\n4,1,true") != std::string::npos);
    const auto md = betti_to_markdown(table);
    CHECK(md.find("| 4 | 1 |") != std::string::npos);
}
