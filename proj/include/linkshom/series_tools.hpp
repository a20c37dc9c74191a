#pragma once

// Generating series for the Euler characteristics of the E_1 page and
// radius-of-convergence bounds for Betti growth. Computed tables also yield
// Poincare series. Series arithmetic is exact; radii are doubles and only
// ever reported.

#include <string>
#include <vector>

#include "linkshom/betti_table.hpp"
#include "linkshom/rational.hpp"

namespace linkshom {

/// Truncated power series sum_{k <= order} c_k x^k.
struct PowerSeries {
    std::vector<Rational> coeffs;  // size order + 1

    [[nodiscard]] int order() const { return static_cast<int>(coeffs.size()) - 1; }
    [[nodiscard]] const Rational& operator[](int k) const { return coeffs.at(static_cast<std::size_t>(k)); }
    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

    /// {"order": k, "coeffs": ["1", "0", "3/2", ...]}
    [[nodiscard]] std::string to_json() const;
};

/// 1 / ((1 - y)(1 - 2y)...(1 - my)) with y = x^{d-1}, truncated at `order`.
[[nodiscard]] PowerSeries euler_series_links(int m, int d, int order);

/// The same series computed by long division by the expanded denominator.
/// Independent of euler_series_links; used to cross-check it.
[[nodiscard]] PowerSeries euler_series_by_division(int m, int d, int order);

/// euler_series_links minus (1 - x^{d-1})^{-m}.
[[nodiscard]] PowerSeries euler_series_pair(int m, int d, int order);

/// Coefficient of y^t in 1 / prod_{i=1}^m (1 - i y), via partial fractions:
/// sum_i i^{t+m-1} / prod_{j != i} (i - j).
[[nodiscard]] Rational euler_coefficient_closed_form(int m, int t);

struct RadiusBound {
    int m = 0;
    int d = 0;
    double link_bound = 0;  // (1/m)^(1/(d-1))
    double knot_bound = 0;  // (1/sqrt 2)^(1/(d-1))
    double minimum = 0;
    std::vector<std::string> notes;

    [[nodiscard]] std::string to_json() const;
};

[[nodiscard]] RadiusBound radius_report(int m, int d);

/// sum_u b_u x^u. Throws std::invalid_argument if any degree up to `order`
/// is missing or incomplete.
[[nodiscard]] PowerSeries poincare_series(const BettiTable& table, int order);

/// Ratios c_{(k+1)s} / c_{ks} for successive multiples of the step s with
/// nonzero denominators.
[[nodiscard]] std::vector<double> growth_ratios(const PowerSeries& series, int step);

struct RetractionRow {
    int u = 0;
    std::uint64_t links = 0;
    std::uint64_t convolution = 0;  // m-fold convolution of the knot Betti numbers
    bool holds = false;
};

/// Compares b_u(links) with the m-fold convolution of b(knots) in every
/// degree where both tables are complete. Rows only, nothing is asserted.
[[nodiscard]] std::vector<RetractionRow> retraction_report(const BettiTable& links, const BettiTable& knots);

}  // namespace linkshom
