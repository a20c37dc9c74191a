#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "linkshom/series_tools.hpp"

using namespace linkshom;

namespace {

std::vector<Rational> ints(std::initializer_list<std::int64_t> v)
{
    return {v.begin(), v.end()};
}

// Coefficient of y^t in prod_i 1/(1 - i y) as a complete homogeneous
// symmetric polynomial h_t(1..m), by brute recursion.
std::int64_t complete_homogeneous(int m, int t)
{
    if (t == 0) return 1;
    if (m == 0) return 0;
    return complete_homogeneous(m - 1, t) + m * complete_homogeneous(m, t - 1);
}

std::int64_t binom(int n, int k)
{
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

BettiTable table_of(int m, std::vector<std::uint64_t> betti, std::vector<bool> complete)
{
    BettiTable t;
    t.m = m;
    t.n = 1;
    t.d = 7;
    for (std::size_t u = 0; u < betti.size(); ++u) t.entries.push_back({static_cast<int>(u), betti[u], complete[u]});
    return t;
}

}  // namespace

TEST_CASE("closed-form Euler series examples")
{
    CHECK(euler_series_links(2, 4, 6).coeffs == ints({1, 0, 0, 3, 0, 0, 7}));
    CHECK(euler_series_pair(2, 4, 6).coeffs == ints({0, 0, 0, 1, 0, 0, 4}));
    CHECK(euler_series_links(3, 6, 15)[15] == Rational(90));
    auto knots = euler_series_links(1, 5, 20);
    for (int k = 0; k <= 20; ++k) CHECK(knots[k] == Rational(k % 4 == 0 ? 1 : 0));
    CHECK(euler_series_links(2, 4, 6).to_json() == R"({"coeffs":["1","0","0","3","0","0","7"],"order":6})");
}

TEST_CASE("recurrence, long division and partial fractions agree")
{
    for (int m = 1; m <= 4; ++m)
        for (int d : {4, 5, 7}) {
            const int order = 8 * (d - 1);
            auto rec = euler_series_links(m, d, order);
            auto div = euler_series_by_division(m, d, order);
            CHECK(rec == div);
            for (int k = 0; k <= order; ++k)
                if (k % (d - 1) != 0) CHECK(rec[k].is_zero());
            for (int t = 0; t <= 8; ++t) {
                CHECK(rec[t * (d - 1)] == Rational(complete_homogeneous(m, t)));
                CHECK(euler_coefficient_closed_form(m, t) == Rational(complete_homogeneous(m, t)));
            }
        }
    // Closed forms quoted for small m.
    for (int t = 0; t <= 10; ++t) {
        CHECK(euler_coefficient_closed_form(2, t) == Rational((std::int64_t{2} << t) - 1));
        std::int64_t p2 = std::int64_t{1} << t;
        std::int64_t p3 = 1;
        for (int i = 0; i < t; ++i) p3 *= 3;
        CHECK(euler_coefficient_closed_form(3, t) == Rational(1, 2) - Rational(4 * p2) + Rational(9 * p3, 2));
    }
}

TEST_CASE("pair series sits below the links series and vanishes for knots")
{
    for (int m = 1; m <= 5; ++m)
        for (int d : {4, 6, 7}) {
            const int order = 10 * (d - 1);
            auto links = euler_series_links(m, d, order);
            auto pair = euler_series_pair(m, d, order);
            CHECK(pair[0].is_zero());
            for (int k = 0; k <= order; ++k) {
                CHECK(pair[k] >= Rational(0));
                CHECK(pair[k] <= links[k]);
                if (k % (d - 1) == 0) CHECK(links[k] - pair[k] == Rational(binom(k / (d - 1) + m - 1, m - 1)));
                if (m == 1) CHECK(pair[k].is_zero());
            }
        }
}

TEST_CASE("radius bounds")
{
    for (int d : {4, 5, 7, 11}) {
        auto r1 = radius_report(1, d);
        CHECK(r1.link_bound == 1.0);
        CHECK(r1.knot_bound == doctest::Approx(std::pow(2.0, -0.5 / (d - 1))).epsilon(1e-14));
        double previous = 2;
        for (int m = 1; m <= 40; ++m) {
            auto r = radius_report(m, d);
            CHECK(r.link_bound < previous);
            CHECK(r.link_bound > 0);
            CHECK(r.link_bound <= 1);
            CHECK(r.minimum == std::min(r.link_bound, r.knot_bound));
            previous = r.link_bound;
        }
        CHECK(radius_report(10, d).link_bound < radius_report(2, d).link_bound);
    }
    auto r = radius_report(3, 6);
    CHECK(r.link_bound == doctest::Approx(std::exp(-std::log(3.0) / 5)).epsilon(1e-14));
    // Reference value from 40-digit decimal arithmetic.
    CHECK(std::fabs(r.link_bound - 0.80274156176023068) < 1e-13);
    // (1/m)^(1/(d-1)) < (1/sqrt 2)^(1/(d-1)) exactly when m > sqrt 2.
    CHECK(radius_report(2, 6).link_bound < radius_report(2, 6).knot_bound);
    CHECK(radius_report(1, 6).link_bound > radius_report(1, 6).knot_bound);
    auto doc = nlohmann::json::parse(r.to_json());
    CHECK(doc["m"] == 3);
    CHECK(doc["d"] == 6);
    CHECK(doc["notes"].size() >= 3);
    CHECK_THROWS_AS(radius_report(0, 6), std::invalid_argument);
    CHECK_THROWS_AS(radius_report(2, 3), std::invalid_argument);
}

TEST_CASE("growth ratios of the pair series approach m")
{
    for (int m = 2; m <= 4; ++m) {
        const int d = 5;
        auto ratios = growth_ratios(euler_series_pair(m, d, 24 * (d - 1)), d - 1);
        REQUIRE(ratios.size() > 10);
        CHECK(std::fabs(ratios.back() - m) < 0.1);
        // The error shrinks as the degree grows.
        CHECK(std::fabs(ratios.back() - m) < std::fabs(ratios[ratios.size() / 2] - m));
    }
}

TEST_CASE("Poincare series refuse incomplete data")
{
    auto point = table_of(0, {1, 0, 0}, {true, true, true});
    CHECK(poincare_series(point, 2).coeffs == ints({1, 0, 0}));
    auto knot = table_of(1, {1, 0, 0, 0, 1}, {true, true, true, true, true});
    CHECK(poincare_series(knot, 4).coeffs == ints({1, 0, 0, 0, 1}));
    auto partial = table_of(1, {1, 0, 0, 0, 1}, {true, true, true, false, true});
    CHECK(poincare_series(partial, 2).coeffs == ints({1, 0, 0}));
    CHECK_THROWS_AS(poincare_series(partial, 3), std::invalid_argument);
    CHECK_THROWS_AS(poincare_series(knot, 5), std::invalid_argument);
}

TEST_CASE("retraction report convolves knot Betti numbers")
{
    auto knots = table_of(1, {1, 0, 1, 2}, {true, true, true, true});
    auto links = table_of(2, {1, 0, 2, 4, 9}, {true, true, true, false, true});
    auto rows = retraction_report(links, knots);
    // Degree 3 is incomplete and degree 4 is beyond the knot data.
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].convolution == 1);
    CHECK(rows[2].u == 2);
    CHECK(rows[2].convolution == 2);
    CHECK(rows[2].holds);
    auto weak = table_of(2, {1, 0, 1}, {true, true, true});
    CHECK_FALSE(retraction_report(weak, knots)[2].holds);
    CHECK_THROWS_AS(retraction_report(knots, links), std::invalid_argument);
}
