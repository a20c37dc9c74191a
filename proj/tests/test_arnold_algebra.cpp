#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "linkshom/arnold_algebra.hpp"

using namespace linkshom;

namespace {

// Coefficients of prod_{i=1}^{n-1} (1 + i x), expanded directly.
std::vector<std::uint64_t> poincare_polynomial(int n)
{
    std::vector<std::uint64_t> c{1};
    for (int i = 1; i <= n - 1; ++i) {
        c.push_back(0);
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] += static_cast<std::uint64_t>(i) * c[k - 1];
    }
    return c;
}

AlgebraElement gen(int n, int a, int b, GenParity parity)
{
    std::vector<RawPair> raw{{a, b}};
    return normal_form(n, raw, parity);
}

AlgebraElement random_element(int n, int t, GenParity parity, std::mt19937_64& rng)
{
    AlgebraElement x(n, static_cast<std::size_t>(t));
    std::uniform_int_distribution<int> idx(1, n);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int term = 0; term < 3; ++term) {
        std::vector<RawPair> raw;
        for (int i = 0; i < t; ++i) {
            int a = idx(rng);
            int b = idx(rng);
            while (b == a) b = idx(rng);
            raw.push_back({a, b});
        }
        x += Rational(coef(rng)) * normal_form(n, raw, parity);
    }
    return x;
}

int small_rank(std::vector<std::vector<Rational>> rows)
{
    int rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || rows[r][c].is_zero()) continue;
            Rational f = rows[r][c] / rows[static_cast<std::size_t>(rank)][c];
            for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= f * rows[static_cast<std::size_t>(rank)][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("parity follows d - 1")
{
    CHECK(parity_of_dimension(4) == GenParity::odd);
    CHECK(parity_of_dimension(6) == GenParity::odd);
    CHECK(parity_of_dimension(5) == GenParity::even);
    CHECK(parity_of_dimension(7) == GenParity::even);
}

TEST_CASE("dimension examples")
{
    CHECK(dimension(2, 0) == 1);
    CHECK(dimension(3, 2) == 2);
    CHECK(dimension(8, 4) == 6769);
    CHECK(dimension(4, 4) == 0);
    CHECK(dimension(0, 0) == 1);
}

TEST_CASE("basis size matches the Poincare polynomial for n <= 8")
{
    for (int n = 0; n <= 8; ++n) {
        const auto poly = poincare_polynomial(n);
        for (int t = 0; t <= 8; ++t) {
            const std::uint64_t expected = static_cast<std::size_t>(t) < poly.size() ? poly[static_cast<std::size_t>(t)] : 0;
            CHECK(dimension(n, t) == expected);
            CHECK(enumerate_basis(n, t).size() == expected);
        }
    }
}

TEST_CASE("basis examples and ordering")
{
    auto b = enumerate_basis(3, 1);
    REQUIRE(b.size() == 3);
    CHECK(b[0].to_text() == "w(1,2)");
    CHECK(b[1].to_text() == "w(1,3)");
    CHECK(b[2].to_text() == "w(2,3)");
    CHECK(enumerate_basis(1, 1).empty());
    CHECK(enumerate_basis(4, 3).size() == 6);
    auto big = enumerate_basis(6, 3);
    CHECK(std::is_sorted(big.begin(), big.end()));
    CHECK(std::adjacent_find(big.begin(), big.end()) == big.end());
}

TEST_CASE("normal form examples")
{
    for (auto parity : {GenParity::even, GenParity::odd}) {
        std::vector<RawPair> sq{{1, 2}, {1, 2}};
        CHECK(normal_form(3, sq, parity).is_zero());
        std::vector<RawPair> zero_idx{{0, 2}};
        CHECK(normal_form(3, zero_idx, parity).is_zero());
        std::vector<RawPair> diag{{2, 2}};
        CHECK(normal_form(3, diag, parity).is_zero());
    }
    // d even: generators anticommute and w(b,a) = w(a,b).
    const auto odd = GenParity::odd;
    auto lhs = normal_form(3, parse_raw_product("w(1,3)*w(2,3)"), odd);
    auto rhs = AlgebraElement::parse(3, "1 w(1,2)*w(2,3)\n-1 w(1,2)*w(1,3)");
    CHECK(lhs == rhs);
    CHECK(multiply(gen(3, 1, 3, odd), gen(3, 2, 3, odd), odd) == rhs);

    CHECK(normal_form(2, parse_raw_product("w(2,1)"), odd) == gen(2, 1, 2, odd));
    CHECK(normal_form(2, parse_raw_product("w(2,1)"), GenParity::even) == Rational(-1) * gen(2, 1, 2, odd));

    CHECK_THROWS_AS(normal_form(3, parse_raw_product("w(1,4)"), odd), std::invalid_argument);
}

TEST_CASE("the products of two generators on 3 points span a space of dimension 2")
{
    // Dense elimination oracle for the Arnold relation.
    for (auto parity : {GenParity::even, GenParity::odd}) {
        const auto basis = enumerate_basis(3, 2);
        std::vector<std::vector<Rational>> rows;
        const std::vector<RawPair> gens{{1, 2}, {1, 3}, {2, 3}};
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = 0; j < gens.size(); ++j) {
                if (i == j) continue;
                std::vector<RawPair> raw{gens[i], gens[j]};
                auto e = normal_form(3, raw, parity);
                std::vector<Rational> row;
                for (const auto& m : basis) row.push_back(e.coefficient(m));
                rows.push_back(row);
            }
        CHECK(small_rank(rows) == 2);
    }
}

TEST_CASE("the Arnold relation and square-zero reduce to zero")
{
    std::mt19937_64 rng(11);
    for (auto parity : {GenParity::even, GenParity::odd}) {
        for (int trial = 0; trial < 100; ++trial) {
            std::uniform_int_distribution<int> idx(1, 6);
            int i = idx(rng);
            int j = idx(rng);
            int k = idx(rng);
            if (i == j || j == k || i == k) continue;
            auto ij = gen(6, i, j, parity);
            auto jk = gen(6, j, k, parity);
            auto ki = gen(6, k, i, parity);
            auto sum = multiply(ij, jk, parity) + multiply(jk, ki, parity) + multiply(ki, ij, parity);
            CHECK(sum.is_zero());
            CHECK(multiply(ij, ij, parity).is_zero());
        }
    }
}

TEST_CASE("rewriting is confluent on 500 random products")
{
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = std::uniform_int_distribution<int>(2, 6)(rng);
        const int t = std::uniform_int_distribution<int>(1, 4)(rng);
        const auto parity = trial % 2 == 0 ? GenParity::even : GenParity::odd;
        std::uniform_int_distribution<int> idx(1, n);
        std::vector<RawPair> raw;
        for (int i = 0; i < t; ++i) raw.push_back({idx(rng), idx(rng)});
        auto first = normal_form_randomized(n, raw, parity, rng);
        auto second = normal_form_randomized(n, raw, parity, rng);
        CHECK(first == second);
        CHECK(first == normal_form(n, raw, parity));
        ++checked;
    }
    CHECK(checked == 500);
}

TEST_CASE("graded commutativity and associativity")
{
    std::mt19937_64 rng(5);
    for (auto parity : {GenParity::even, GenParity::odd}) {
        for (int trial = 0; trial < 60; ++trial) {
            const int n = 6;
            const int tx = std::uniform_int_distribution<int>(0, 2)(rng);
            const int ty = std::uniform_int_distribution<int>(0, 2)(rng);
            const int tz = std::uniform_int_distribution<int>(0, 1)(rng);
            auto x = random_element(n, tx, parity, rng);
            auto y = random_element(n, ty, parity, rng);
            auto z = random_element(n, tz, parity, rng);
            const int sign = (parity == GenParity::odd && (tx * ty) % 2 == 1) ? -1 : 1;
            CHECK(multiply(x, y, parity) == Rational(sign) * multiply(y, x, parity));
            CHECK(multiply(multiply(x, y, parity), z, parity) == multiply(x, multiply(y, z, parity), parity));
        }
    }
}

TEST_CASE("unit and idempotence")
{
    for (auto parity : {GenParity::even, GenParity::odd}) {
        auto y = AlgebraElement::parse(4, "2 w(1,2)*w(1,3)\n-1/3 w(2,3)*w(3,4)");
        CHECK(multiply(AlgebraElement::unit(4), y, parity) == y);
        for (const auto& m : enumerate_basis(5, 2)) {
            std::vector<RawPair> raw;
            for (const auto& f : m.factors()) raw.push_back({f.a, f.b});
            CHECK(normal_form(5, raw, parity) == AlgebraElement::from_monomial(m));
        }
    }
}

TEST_CASE("text formats round trip")
{
    auto m = OmegaMonomial::parse(4, "w(1,2)*w(2,4)");
    CHECK(m.to_text() == "w(1,2)*w(2,4)");
    CHECK(OmegaMonomial::parse(4, "1").word_length() == 0);
    CHECK_THROWS(OmegaMonomial::parse(4, "w(2,4)*w(1,2)"));
    auto x = AlgebraElement::parse(4, "3/2 w(1,2)*w(2,4)\n-1 w(1,3)*w(3,4)");
    CHECK(AlgebraElement::parse(4, x.to_text()) == x);
    CHECK(AlgebraElement(4, 2).to_text() == "0");
}
