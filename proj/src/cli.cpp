#include "linkshom/cli.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "linkshom/arnold_algebra.hpp"
#include "linkshom/errors.hpp"
#include "linkshom/hochschild_engine.hpp"
#include "linkshom/rank_cache.hpp"
#include "linkshom/series_tools.hpp"
#include "linkshom/simplicial_wedge.hpp"

namespace linkshom {

namespace {

using ojson = nlohmann::ordered_json;

void require(bool ok, const std::string& message)
{
    if (!ok) throw std::invalid_argument(message);
}

void require_json(const JobSpec& spec, const char* command)
{
    require(spec.format == OutputFormat::json, std::string(command) + " only renders JSON");
}

std::string context(const JobSpec& spec)
{
    std::ostringstream os;
    os << "m=" << spec.m << " n=" << spec.n << " d=" << spec.d;
    if (spec.command == Command::basis) os << " points=" << spec.points << " t=" << spec.t;
    if (spec.command == Command::model) os << " p=" << spec.p;
    if (spec.command == Command::betti) os << " u_max=" << spec.u_max;
    return os.str();
}

ojson parse_ordered(const std::string& text) { return ojson::parse(text); }

std::string run_basis(const JobSpec& spec)
{
    require_json(spec, "basis");
    require(spec.points >= 0 && spec.points <= OmegaMonomial::max_points, "points must lie in 0..255");
    require(spec.t >= 0 && spec.t <= static_cast<int>(OmegaMonomial::max_word_length), "t must lie in 0..12");
    const auto basis = enumerate_basis(spec.points, spec.t);
    ojson doc;
    doc["points"] = spec.points;
    doc["t"] = spec.t;
    doc["dimension"] = dimension(spec.points, spec.t);
    auto list = ojson::array();
    for (const auto& m : basis) list.push_back(m.to_text());
    doc["basis"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::string run_model(const JobSpec& spec)
{
    require_json(spec, "model");
    require(spec.m >= 0, "m must be >= 0");
    require(spec.n >= 1, "n must be >= 1");
    require(spec.p >= 0 && spec.p <= PointedSimplicialSet::max_level, "p must lie in 0..62");
    return PointedSimplicialSet(spec.m, spec.n, spec.p).to_json(2) + "\n";
}

std::string render_table(const BettiTable& table, OutputFormat format)
{
    switch (format) {
    case OutputFormat::json: return betti_to_json(table);
    case OutputFormat::csv: return betti_to_csv(table);
    case OutputFormat::md: return betti_to_markdown(table);
    }
    return {};
}

std::string run_betti(const JobSpec& spec)
{
    require(spec.m >= 0, "m must be >= 0");
    require(spec.n >= 1, "n must be >= 1");
    require(spec.n >= 2 || spec.d >= 4, "n = 1 needs d >= 4");
    require(spec.n == 1 || spec.p_max.has_value(), "n >= 2 requires --p-max");
    require(spec.u_max >= 0, "u-max must be >= 0");
    require(spec.jobs >= 1, "jobs must be >= 1");

    auto cache = RankCache::from_environment(spec.cache_dir);
    BettiOptions options;
    options.p_max = spec.p_max;
    options.rank.policy = spec.policy;
    options.rank.seed = spec.seed;
    options.jobs = spec.jobs;
    options.cache = &cache;
    const auto links = betti_table(spec.m, spec.n, spec.d, spec.u_max, options);
    if (!spec.retraction) return render_table(links, spec.format) + (spec.format == OutputFormat::json ? "\n" : "");

    require(spec.m >= 1, "the retraction report needs m >= 1");
    const auto knots = spec.m == 1 ? links : betti_table(1, spec.n, spec.d, spec.u_max, options);
    const auto rows = retraction_report(links, knots);
    if (spec.format == OutputFormat::json) {
        ojson doc;
        doc["links"] = parse_ordered(betti_to_json(links));
        doc["knots"] = parse_ordered(betti_to_json(knots));
        auto list = ojson::array();
        for (const auto& r : rows)
            list.push_back(ojson{{"u", r.u}, {"links", r.links}, {"convolution", r.convolution}, {"holds", r.holds}});
        doc["retraction"] = std::move(list);
        return doc.dump(2) + "\n";
    }
    std::string out = render_table(links, spec.format);
    if (spec.format == OutputFormat::csv) {
        out += "# retraction: u,links,convolution,holds\n";
        for (const auto& r : rows)
            out += "# " + std::to_string(r.u) + "," + std::to_string(r.links) + "," + std::to_string(r.convolution) +
                   "," + (r.holds ? "true" : "false") + "\n";
    } else {
        out += "\n| u | links | knot convolution | holds |\n|---|---|---|---|\n";
        for (const auto& r : rows)
            out += "| " + std::to_string(r.u) + " | " + std::to_string(r.links) + " | " +
                   std::to_string(r.convolution) + " | " + (r.holds ? "yes" : "no") + " |\n";
    }
    return out;
}

std::string run_euler(const JobSpec& spec)
{
    require_json(spec, "euler");
    require(spec.m >= 1, "m must be >= 1");
    require(spec.d >= 4, "d must be >= 4");
    if (spec.check) {
        require(spec.t_max >= 0, "t-max must be >= 0");
        auto cache = RankCache::from_environment(spec.cache_dir);
        const auto report = euler_check(spec.m, spec.d, spec.t_max, &cache);
        if (!report.all_pass()) throw InvariantViolation("euler check failed: " + report.to_json());
        return report.to_json() + "\n";
    }
    require(spec.order >= 0, "terms must be >= 1");
    const auto s = spec.pair ? euler_series_pair(spec.m, spec.d, spec.order)
                             : euler_series_links(spec.m, spec.d, spec.order);
    return s.to_json() + "\n";
}

std::string run_series(const JobSpec& spec)
{
    require_json(spec, "series");
    require(spec.order >= 0, "order must be >= 0");
    ojson doc;
    doc["kind"] = spec.series_kind;
    doc["m"] = spec.m;
    doc["n"] = spec.n;
    doc["d"] = spec.d;
    PowerSeries s;
    if (spec.series_kind == "links" || spec.series_kind == "pair") {
        require(spec.n == 1, "closed-form series exist only for n = 1");
        require(spec.m >= 1 && spec.d >= 4, "series need m >= 1 and d >= 4");
        s = spec.series_kind == "links" ? euler_series_links(spec.m, spec.d, spec.order)
                                        : euler_series_pair(spec.m, spec.d, spec.order);
    } else if (spec.series_kind == "poincare") {
        auto cache = RankCache::from_environment(spec.cache_dir);
        BettiOptions options;
        options.p_max = spec.p_max;
        options.rank.policy = spec.policy;
        options.rank.seed = spec.seed;
        options.jobs = spec.jobs;
        options.cache = &cache;
        s = poincare_series(betti_table(spec.m, spec.n, spec.d, spec.order, options), spec.order);
    } else {
        throw std::invalid_argument("series kind must be links, pair or poincare");
    }
    doc["series"] = parse_ordered(s.to_json());
    if (spec.series_kind != "poincare") {
        auto ratios = ojson::array();
        for (double r : growth_ratios(s, spec.d - 1)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", r);
            ratios.push_back(ojson::parse(buf));
        }
        doc["growth_ratios"] = std::move(ratios);
    }
    return doc.dump(2) + "\n";
}

std::string run_radius(const JobSpec& spec)
{
    require_json(spec, "radius");
    return radius_report(spec.m, spec.d).to_json() + "\n";
}

}  // namespace

RunResult run(const JobSpec& spec)
{
    RunResult result;
    try {
        switch (spec.command) {
        case Command::basis: result.output = run_basis(spec); break;
        case Command::model: result.output = run_model(spec); break;
        case Command::betti: result.output = run_betti(spec); break;
        case Command::euler: result.output = run_euler(spec); break;
        case Command::series: result.output = run_series(spec); break;
        case Command::radius: result.output = run_radius(spec); break;
        case Command::verify: {
            require_json(spec, "verify");
            const auto report = verify(spec.suite, spec.m);
            result.output = report.to_json() + "\n";
            if (!report.passed()) result.exit_code = exit_invariant;
            break;
        }
        }
    } catch (const std::invalid_argument& e) {
        result = {exit_validation, {}, "invalid input (" + context(spec) + "): " + e.what() + "\n"};
    } catch (const std::out_of_range& e) {
        result = {exit_validation, {}, "invalid input (" + context(spec) + "): " + e.what() + "\n"};
    } catch (const InvariantViolation& e) {
        result = {exit_invariant, {}, "invariant violated (" + context(spec) + "): " + e.what() + "\n"};
    } catch (const std::logic_error& e) {
        result = {exit_invariant, {}, "invariant violated (" + context(spec) + "): " + e.what() + "\n"};
    } catch (const std::exception& e) {
        result = {exit_failure, {}, "error (" + context(spec) + "): " + e.what() + "\n"};
    }
    return result;
}

}  // namespace linkshom
