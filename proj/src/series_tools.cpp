#include "linkshom/series_tools.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace linkshom {

namespace {

void require(bool ok, const std::string& message)
{
    if (!ok) throw std::invalid_argument(message);
}

void check_series_args(int m, int d, int order)
{
    require(m >= 0, "m must be >= 0");
    require(d >= 2, "d must be >= 2");
    require(order >= 0, "order must be >= 0");
}

void assert_integral(const PowerSeries& s)
{
    for (const auto& c : s.coeffs)
        if (!c.is_integer()) throw std::logic_error("Euler series coefficient " + c.to_string() + " is not integral");
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string PowerSeries::to_json() const
{
    nlohmann::json coeff_list = nlohmann::json::array();
    for (const auto& c : coeffs) coeff_list.push_back(c.to_string());
    return nlohmann::json{{"order", order()}, {"coeffs", std::move(coeff_list)}}.dump();
}

PowerSeries euler_series_links(int m, int d, int order)
{
    check_series_args(m, d, order);
    const int step = d - 1;
    PowerSeries s{std::vector<Rational>(static_cast<std::size_t>(order) + 1)};
    s.coeffs[0] = 1;
    // Multiplying by 1/(1 - i y) is the recurrence c_k += i c_{k - step}.
    for (int i = 1; i <= m; ++i)
        for (int k = step; k <= order; ++k)
            s.coeffs[static_cast<std::size_t>(k)] += Rational(i) * s.coeffs[static_cast<std::size_t>(k - step)];
    assert_integral(s);
    return s;
}

PowerSeries euler_series_by_division(int m, int d, int order)
{
    check_series_args(m, d, order);
    const int step = d - 1;
    // Denominator prod (1 - i x^step), expanded.
    std::vector<Rational> den{Rational(1)};
    for (int i = 1; i <= m; ++i) {
        std::vector<Rational> next(den.size() + static_cast<std::size_t>(step));
        for (std::size_t k = 0; k < den.size(); ++k) {
            next[k] += den[k];
            next[k + static_cast<std::size_t>(step)] -= Rational(i) * den[k];
        }
        den = std::move(next);
    }
    PowerSeries s{std::vector<Rational>(static_cast<std::size_t>(order) + 1)};
    for (int k = 0; k <= order; ++k) {
        Rational acc = k == 0 ? Rational(1) : Rational(0);
        for (int j = 1; j <= k && static_cast<std::size_t>(j) < den.size(); ++j)
            acc -= den[static_cast<std::size_t>(j)] * s.coeffs[static_cast<std::size_t>(k - j)];
        s.coeffs[static_cast<std::size_t>(k)] = acc / den[0];
    }
    assert_integral(s);
    return s;
}

PowerSeries euler_series_pair(int m, int d, int order)
{
    PowerSeries s = euler_series_links(m, d, order);
    const int step = d - 1;
    // (1 - y)^{-m} has coefficient C(t + m - 1, m - 1) at y^t.
    for (int t = 0; t * step <= order; ++t) {
        Rational binom = m == 0 ? Rational(t == 0 ? 1 : 0) : Rational(1);
        for (int i = 1; m > 0 && i <= m - 1; ++i) binom = binom * Rational(t + i) / Rational(i);
        s.coeffs[static_cast<std::size_t>(t * step)] -= binom;
    }
    assert_integral(s);
    return s;
}

Rational euler_coefficient_closed_form(int m, int t)
{
    require(m >= 0 && t >= 0, "m and t must be >= 0");
    if (m == 0) return t == 0 ? 1 : 0;
    Rational sum = 0;
    for (int i = 1; i <= m; ++i) {
        Rational term = 1;
        for (int k = 0; k < t + m - 1; ++k) term *= Rational(i);
        for (int j = 1; j <= m; ++j)
            if (j != i) term /= Rational(i - j);
        sum += term;
    }
    return sum;
}

std::string RadiusBound::to_json() const
{
    // Doubles are rendered with 17 significant digits so reruns are byte-stable.
    nlohmann::ordered_json doc;
    doc["m"] = m;
    doc["d"] = d;
    doc["link_bound"] = nlohmann::ordered_json::parse(format_double(link_bound));
    doc["knot_bound"] = nlohmann::ordered_json::parse(format_double(knot_bound));
    doc["minimum"] = nlohmann::ordered_json::parse(format_double(minimum));
    doc["notes"] = notes;
    return doc.dump(2);
}

RadiusBound radius_report(int m, int d)
{
    require(m >= 1, "radius_report requires m >= 1");
    require(d >= 4, "radius_report requires d >= 4");
    RadiusBound r;
    r.m = m;
    r.d = d;
    const double e = 1.0 / (d - 1);
    r.link_bound = std::pow(1.0 / m, e);
    r.knot_bound = std::pow(1.0 / std::sqrt(2.0), e);
    r.minimum = std::min(r.link_bound, r.knot_bound);
    r.notes.push_back("link_bound = (1/m)^(1/(d-1)): upper bound on the radius of convergence of the pair Poincare series");
    r.notes.push_back("knot_bound = (1/sqrt(2))^(1/(d-1)): upper bound on the radius for long knots");
    r.notes.push_back(std::string("link_bound < knot_bound: ") + (r.link_bound < r.knot_bound ? "yes" : "no") +
                      " (the link bound is the sharper one once m >= 2)");
    r.notes.push_back("link_bound -> 0 as m -> infinity");
    r.notes.push_back("conditional: if the knot radius R is positive, the pair radius is < R whenever m > 1/R^(d-1)");
    return r;
}

PowerSeries poincare_series(const BettiTable& table, int order)
{
    require(order >= 0, "order must be >= 0");
    PowerSeries s{std::vector<Rational>(static_cast<std::size_t>(order) + 1)};
    std::vector<bool> seen(static_cast<std::size_t>(order) + 1, false);
    for (const auto& e : table.entries) {
        if (e.u < 0 || e.u > order) continue;
        if (!e.complete)
            throw std::invalid_argument("Betti number in degree " + std::to_string(e.u) + " is incomplete");
        s.coeffs[static_cast<std::size_t>(e.u)] = Rational(static_cast<std::int64_t>(e.betti));
        seen[static_cast<std::size_t>(e.u)] = true;
    }
    for (int u = 0; u <= order; ++u)
        if (!seen[static_cast<std::size_t>(u)])
            throw std::invalid_argument("Betti table has no entry for degree " + std::to_string(u));
    return s;
}

std::vector<double> growth_ratios(const PowerSeries& series, int step)
{
    require(step >= 1, "step must be >= 1");
    std::vector<double> out;
    for (int k = 0; (k + 1) * step <= series.order(); ++k) {
        const auto& a = series[k * step];
        const auto& b = series[(k + 1) * step];
        if (a.is_zero()) continue;
        out.push_back((static_cast<double>(b.num()) / static_cast<double>(b.den())) /
                      (static_cast<double>(a.num()) / static_cast<double>(a.den())));
    }
    return out;
}

std::vector<RetractionRow> retraction_report(const BettiTable& links, const BettiTable& knots)
{
    require(knots.m == 1, "knot table must have m = 1");
    require(links.d == knots.d && links.n == knots.n, "tables must share n and d");
    // Knot Betti numbers while the knot table stays complete.
    std::vector<std::uint64_t> knot;
    for (const auto& e : knots.entries) {
        if (e.u != static_cast<int>(knot.size()) || !e.complete) break;
        knot.push_back(e.betti);
    }
    std::vector<RetractionRow> rows;
    for (const auto& e : links.entries) {
        if (!e.complete || e.u >= static_cast<int>(knot.size())) continue;
        // m-fold convolution truncated at degree u.
        std::vector<std::uint64_t> conv(static_cast<std::size_t>(e.u) + 1, 0);
        conv[0] = 1;
        for (int s = 0; s < links.m; ++s) {
            std::vector<std::uint64_t> next(conv.size(), 0);
            for (std::size_t i = 0; i < conv.size(); ++i)
                for (std::size_t j = 0; i + j < conv.size(); ++j) next[i + j] += conv[i] * knot[j];
            conv = std::move(next);
        }
        rows.push_back({e.u, e.betti, conv.back(), e.betti >= conv.back()});
    }
    return rows;
}

}  // namespace linkshom
