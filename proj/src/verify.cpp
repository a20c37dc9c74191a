#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "linkshom/arnold_algebra.hpp"
#include "linkshom/cli.hpp"
#include "linkshom/gamma_maps.hpp"
#include "linkshom/hochschild_engine.hpp"
#include "linkshom/series_tools.hpp"
#include "linkshom/simplicial_wedge.hpp"

namespace linkshom {

namespace {

// Collects pass/fail for one named check, keeping only the first failure.
class Tally {
public:
    explicit Tally(std::string name) { check_.name = std::move(name); }

    void expect(bool ok, const std::string& what)
    {
        ++check_.cases;
        if (!ok && failures_++ == 0) check_.detail = what;
    }

    VerifyCheck finish()
    {
        check_.passed = failures_ == 0 && check_.cases > 0;
        if (failures_ > 1) check_.detail += " (+" + std::to_string(failures_ - 1) + " more)";
        return check_;
    }

private:
    VerifyCheck check_;
    std::uint64_t failures_ = 0;
};

std::vector<std::uint64_t> poincare_polynomial(int n)
{
    std::vector<std::uint64_t> c{1};
    for (int i = 1; i < n; ++i) {
        c.push_back(0);
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] += static_cast<std::uint64_t>(i) * c[k - 1];
    }
    return c;
}

void arnold_suite(std::vector<VerifyCheck>& out)
{
    Tally dims("arnold/dimension_oracle");
    for (int n = 0; n <= 8; ++n) {
        const auto poly = poincare_polynomial(n);
        for (int t = 0; t <= 7; ++t) {
            const std::uint64_t expected = static_cast<std::size_t>(t) < poly.size() ? poly[static_cast<std::size_t>(t)] : 0;
            const auto basis = enumerate_basis(n, t);
            std::ostringstream what;
            what << "n=" << n << " t=" << t << ": " << basis.size() << " vs " << expected;
            dims.expect(basis.size() == expected && dimension(n, t) == expected &&
                            std::is_sorted(basis.begin(), basis.end()) &&
                            std::adjacent_find(basis.begin(), basis.end()) == basis.end(),
                        what.str());
        }
    }
    out.push_back(dims.finish());

    Tally relations("arnold/relations");
    for (auto parity : {GenParity::even, GenParity::odd})
        for (int n = 3; n <= 5; ++n)
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    for (int k = 1; k <= n; ++k) {
                        if (i == j || j == k || i == k) continue;
                        std::vector<RawPair> a{{i, j}, {j, k}};
                        std::vector<RawPair> b{{j, k}, {k, i}};
                        std::vector<RawPair> c{{k, i}, {i, j}};
                        auto sum = normal_form(n, a, parity) + normal_form(n, b, parity) + normal_form(n, c, parity);
                        std::vector<RawPair> sq{{i, j}, {j, i}};
                        relations.expect(sum.is_zero() && normal_form(n, sq, parity).is_zero(),
                                         "n=" + std::to_string(n) + " (" + std::to_string(i) + "," +
                                             std::to_string(j) + "," + std::to_string(k) + ")");
                    }
    out.push_back(relations.finish());

    Tally confluence("arnold/confluence");
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> point(1, 6);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<RawPair> raw;
        const int len = 1 + trial % 4;
        while (static_cast<int>(raw.size()) < len) {
            int a = point(rng);
            int b = point(rng);
            if (a != b) raw.push_back({a, b});
        }
        const auto parity = trial % 2 ? GenParity::odd : GenParity::even;
        confluence.expect(normal_form(6, raw, parity) == normal_form_randomized(6, raw, parity, rng),
                          "trial " + std::to_string(trial));
    }
    out.push_back(confluence.finish());
}

PointedMap random_map(int k, int l, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pick(0, l);
    std::vector<int> table;
    for (int i = 0; i < k; ++i) table.push_back(pick(rng));
    return {k, l, table};
}

std::vector<PointedMap> all_maps(int k, int l)
{
    std::vector<PointedMap> out;
    std::vector<int> table(static_cast<std::size_t>(k), 0);
    while (true) {
        out.emplace_back(k, l, table);
        int i = 0;
        while (i < k && table[static_cast<std::size_t>(i)] == l) table[static_cast<std::size_t>(i++)] = 0;
        if (i == k) break;
        ++table[static_cast<std::size_t>(i)];
    }
    return out;
}

void gamma_suite(std::vector<VerifyCheck>& out)
{
    Tally functor("gamma/functoriality");
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> size(0, 5);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = size(rng);
        const int l = size(rng);
        const int r = size(rng);
        const auto f = random_map(k, l, rng);
        const auto g = random_map(l, r, rng);
        const auto parity = trial % 2 ? GenParity::odd : GenParity::even;
        const int t = trial % 3;
        const auto gf = induced_map(compose(f, g), t, parity).matrix;
        const auto chained = induced_map(g, t, parity).matrix * induced_map(f, t, parity).matrix;
        functor.expect(gf == chained, f.to_text() + " then " + g.to_text());
    }
    out.push_back(functor.finish());

    // The cohomology action must be the transpose of the homology-side
    // oracle, entry by entry up to the sign of the chosen pairing.
    Tally duality("gamma/duality");
    for (auto parity : {GenParity::even, GenParity::odd})
        for (int k = 0; k <= 3; ++k)
            for (int l = 0; l <= 3; ++l)
                for (const auto& f : all_maps(k, l))
                    for (int t = 0; t <= 2; ++t) {
                        const auto rows_k = poisson_basis(k, t);
                        const auto cols_l = poisson_basis(l, t);
                        const auto basis_k = enumerate_basis(k, t);
                        const auto basis_l = enumerate_basis(l, t);
                        const auto oracle = leibniz_oracle(f, t, parity);
                        const auto m = induced_map(f, t, parity).matrix;
                        for (std::size_t r = 0; r < rows_k.size(); ++r)
                            for (std::size_t c = 0; c < cols_l.size(); ++c) {
                                auto src = std::lower_bound(basis_k.begin(), basis_k.end(), paired_monomial(rows_k[r])) -
                                           basis_k.begin();
                                auto dst = std::lower_bound(basis_l.begin(), basis_l.end(), paired_monomial(cols_l[c])) -
                                           basis_l.begin();
                                const auto a = m.at(static_cast<std::size_t>(dst), static_cast<std::size_t>(src));
                                const auto b = oracle.at(r, c);
                                duality.expect(a == b || a == -b, f.to_text() + " t=" + std::to_string(t));
                            }
                    }
    out.push_back(duality.finish());
}

void simplicial_suite(std::vector<VerifyCheck>& out)
{
    Tally sizes("simplicial/cardinality");
    for (int m = 0; m <= 3; ++m)
        for (int n = 1; n <= 2; ++n) {
            const auto x = wedge_model(m, n, 8);
            for (int p = 0; p <= 8; ++p) {
                const auto expected = static_cast<std::uint64_t>(m) * binomial(p, n) + 1;
                sizes.expect(x.level_size(p) == expected,
                             "m=" + std::to_string(m) + " n=" + std::to_string(n) + " p=" + std::to_string(p));
            }
        }
    out.push_back(sizes.finish());

    // compose(f, g) is g after f.
    Tally identities("simplicial/identities");
    for (int m = 0; m <= 3; ++m)
        for (int n = 1; n <= 2; ++n) {
            const auto x = wedge_model(m, n, 8);
            for (int p = 0; p <= 8; ++p) {
                const std::string where = "m=" + std::to_string(m) + " n=" + std::to_string(n) + " p=" + std::to_string(p);
                for (int j = 0; p >= 2 && j <= p; ++j)
                    for (int i = 0; i < j; ++i)
                        identities.expect(compose(x.face(p, j), x.face(p - 1, i)) ==
                                              compose(x.face(p, i), x.face(p - 1, j - 1)),
                                          where + " dd");
                for (int j = 0; p + 2 <= 8 && j <= p; ++j)
                    for (int i = 0; i <= j; ++i)
                        identities.expect(compose(x.degeneracy(p, j), x.degeneracy(p + 1, i)) ==
                                              compose(x.degeneracy(p, i), x.degeneracy(p + 1, j + 1)),
                                          where + " ss");
                for (int j = 0; p + 1 <= 8 && j <= p; ++j)
                    for (int i = 0; i <= p + 1; ++i) {
                        const auto lhs = compose(x.degeneracy(p, j), x.face(p + 1, i));
                        PointedMap rhs;
                        if (i < j)
                            rhs = compose(x.face(p, i), x.degeneracy(p - 1, j - 1));
                        else if (i == j || i == j + 1)
                            rhs = PointedMap::identity(x.points(p));
                        else
                            rhs = compose(x.face(p, i - 1), x.degeneracy(p - 1, j));
                        identities.expect(lhs == rhs, where + " ds");
                    }
            }
        }
    out.push_back(identities.finish());
}

void complex_suite(std::vector<VerifyCheck>& out)
{
    Tally structure("complex/square_zero_and_well_defined");
    Tally vanishing("complex/normalized_vanishing");
    struct Case {
        int m, n, t;
    };
    const std::vector<Case> cases{{1, 1, 3}, {2, 1, 3}, {3, 1, 2}, {1, 2, 2}};
    for (const auto& c : cases)
        for (int t = 0; t <= c.t; ++t)
            for (int d : {6, 7}) {
                const std::string where = "m=" + std::to_string(c.m) + " n=" + std::to_string(c.n) +
                                          " d=" + std::to_string(d) + " t=" + std::to_string(t);
                try {
                    const auto s = assemble_slice(c.m, c.n, d, t, 2 * c.n * t);
                    structure.expect(s.square_zero_verified && s.well_defined_verified, where);
                } catch (const std::exception& e) {
                    structure.expect(false, where + ": " + e.what());
                }
                if (c.n == 1)
                    for (int p : {2 * t + 1, 2 * t + 2})
                        vanishing.expect(normalized_dimension_count(c.m, 1, p, t) == 0,
                                         where + " p=" + std::to_string(p));
            }
    out.push_back(structure.finish());
    out.push_back(vanishing.finish());
}

void euler_suite(std::vector<VerifyCheck>& out, int m)
{
    if (m < 1) throw std::invalid_argument("the euler suite needs m >= 1");
    const int t_max = m <= 2 ? 4 : (m == 3 ? 3 : 2);
    Tally euler("euler/m=" + std::to_string(m));
    for (int d : {6, 7}) {
        const auto report = euler_check(m, d, t_max);
        for (const auto& row : report.rows)
            euler.expect(row.pass, "d=" + std::to_string(d) + " t=" + std::to_string(row.t) + ": " +
                                       std::to_string(row.computed) + " vs " + row.expected.to_string());
    }
    out.push_back(euler.finish());
}

}  // namespace

bool VerifyReport::passed() const
{
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string VerifyReport::to_json() const
{
    nlohmann::ordered_json doc;
    doc["suite"] = suite;
    doc["passed"] = passed();
    auto list = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json row;
        row["name"] = c.name;
        row["passed"] = c.passed;
        row["cases"] = c.cases;
        if (!c.detail.empty()) row["detail"] = c.detail;
        list.push_back(std::move(row));
    }
    doc["checks"] = std::move(list);
    return doc.dump(2);
}

VerifyReport verify(const std::string& suite, int m)
{
    static const std::vector<std::string> known{"arnold", "gamma", "simplicial", "complex", "euler", "all"};
    if (std::find(known.begin(), known.end(), suite) == known.end())
        throw std::invalid_argument("unknown suite '" + suite + "'");
    VerifyReport report;
    report.suite = suite;
    const bool all = suite == "all";
    if (all || suite == "arnold") arnold_suite(report.checks);
    if (all || suite == "gamma") gamma_suite(report.checks);
    if (all || suite == "simplicial") simplicial_suite(report.checks);
    if (all || suite == "complex") complex_suite(report.checks);
    if (all || suite == "euler") euler_suite(report.checks, m);
    return report;
}

}  // namespace linkshom
