// Command-line front end. Parses flags into a JobSpec and hands it to run().

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "linkshom/cli.hpp"

using namespace linkshom;

int main(int argc, char** argv)
{
    CLI::App app{"Rational homology of spaces of long links modulo immersions"};
    app.require_subcommand(1);
    JobSpec spec;
    int terms = 1;
    int p_max = -1;
    bool exact = false;
    const std::map<std::string, OutputFormat> formats{
        {"json", OutputFormat::json}, {"csv", OutputFormat::csv}, {"md", OutputFormat::md}};

    auto* basis = app.add_subcommand("basis", "admissible basis of the Arnold algebra");
    basis->add_option("--points", spec.points, "number of points")->required();
    basis->add_option("--t", spec.t, "word length")->required();

    auto* model = app.add_subcommand("model", "simplicial model of a wedge of spheres");
    model->add_option("--m", spec.m, "number of spheres")->required();
    model->add_option("--n", spec.n, "sphere dimension");
    model->add_option("--p", spec.p, "top simplicial level")->required();

    auto* betti = app.add_subcommand("betti", "Betti numbers up to a total degree");
    betti->add_option("--m", spec.m, "number of strands")->required();
    betti->add_option("--n", spec.n, "sphere dimension");
    betti->add_option("--d", spec.d, "ambient dimension")->required();
    betti->add_option("--u-max", spec.u_max, "largest total degree")->required();
    betti->add_option("--p-max", p_max, "cap on the simplicial degree (required for n >= 2)");
    betti->add_flag("--exact", exact, "fraction-free ranks instead of multimodular");
    betti->add_option("--format", spec.format, "json, csv or md")->transform(CLI::CheckedTransformer(formats));
    betti->add_option("--seed", spec.seed, "prime selection seed");
    betti->add_option("--cache-dir", spec.cache_dir, "rank cache directory (overrides LINKSHOM_CACHE)");
    betti->add_option("--jobs", spec.jobs, "worker threads");
    betti->add_flag("--retraction", spec.retraction, "compare with the convolution of knot Betti numbers");

    auto* euler = app.add_subcommand("euler", "closed-form Euler series, or a check against the complex");
    euler->add_option("--m", spec.m, "number of strands")->required();
    euler->add_option("--d", spec.d, "ambient dimension")->required();
    euler->add_option("--terms", terms, "number of coefficients");
    euler->add_flag("--pair", spec.pair, "subtract the product of knot series");
    euler->add_flag("--check", spec.check, "compare alternating sums of normalized dimensions");
    euler->add_option("--t-max", spec.t_max, "largest word length for --check");
    euler->add_option("--cache-dir", spec.cache_dir, "cache directory (overrides LINKSHOM_CACHE)");

    auto* series = app.add_subcommand("series", "generating series");
    series->add_option("--kind", spec.series_kind, "links, pair or poincare")
        ->check(CLI::IsMember({"links", "pair", "poincare"}));
    series->add_option("--m", spec.m, "number of strands")->required();
    series->add_option("--n", spec.n, "sphere dimension");
    series->add_option("--d", spec.d, "ambient dimension")->required();
    series->add_option("--order", spec.order, "truncation order")->required();
    series->add_option("--p-max", p_max, "cap on the simplicial degree for poincare");
    series->add_option("--seed", spec.seed, "prime selection seed");
    series->add_option("--cache-dir", spec.cache_dir, "rank cache directory (overrides LINKSHOM_CACHE)");
    series->add_option("--jobs", spec.jobs, "worker threads");

    auto* radius = app.add_subcommand("radius", "radius-of-convergence bounds");
    radius->add_option("--m", spec.m, "number of strands")->required();
    radius->add_option("--d", spec.d, "ambient dimension")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run invariant suites");
    verify_cmd->add_option("--suite", spec.suite, "arnold, gamma, simplicial, complex, euler or all")
        ->check(CLI::IsMember({"arnold", "gamma", "simplicial", "complex", "euler", "all"}));
    verify_cmd->add_option("--m", spec.m, "strand count for the euler suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_validation;
    }

    if (*basis) spec.command = Command::basis;
    if (*model) spec.command = Command::model;
    if (*betti) spec.command = Command::betti;
    if (*euler) spec.command = Command::euler;
    if (*series) spec.command = Command::series;
    if (*radius) spec.command = Command::radius;
    if (*verify_cmd) spec.command = Command::verify;
    if (p_max >= 0) spec.p_max = p_max;
    if (exact) spec.policy = RankPolicy::exact;
    if (*euler && !spec.check) {
        if (terms < 1) {
            std::cerr << "invalid input: --terms must be >= 1\n";
            return exit_validation;
        }
        spec.order = terms - 1;
    }

    const auto result = run(spec);
    std::cout << result.output;
    std::cerr << result.error;
    return result.exit_code;
}
