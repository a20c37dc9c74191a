#include <doctest.h>

#include <filesystem>

#include <json.hpp>

#include "linkshom/cli.hpp"

using namespace linkshom;

namespace {

JobSpec job(Command c)
{
    JobSpec s;
    s.command = c;
    return s;
}

}  // namespace

TEST_CASE("betti for long knots in R^7")
{
    auto spec = job(Command::betti);
    spec.m = 1;
    spec.d = 7;
    spec.u_max = 4;
    auto r = run(spec);
    REQUIRE(r.exit_code == exit_ok);
    auto doc = nlohmann::json::parse(r.output);
    std::vector<int> betti;
    for (const auto& e : doc["entries"]) betti.push_back(e["betti"]);
    CHECK(betti == std::vector<int>{1, 0, 0, 0, 1});
    spec.format = OutputFormat::csv;
    CHECK(run(spec).output.find("4,1,true") != std::string::npos);
    spec.format = OutputFormat::md;
    CHECK(run(spec).output.find("| 4 | 1 | yes |") != std::string::npos);
}

TEST_CASE("euler series and check")
{
    auto spec = job(Command::euler);
    spec.m = 2;
    spec.d = 4;
    spec.order = 6;
    auto r = run(spec);
    CHECK(r.exit_code == exit_ok);
    CHECK(nlohmann::json::parse(r.output)["coeffs"] == nlohmann::json{"1", "0", "0", "3", "0", "0", "7"});
    spec.pair = true;
    CHECK(nlohmann::json::parse(run(spec).output)["coeffs"] == nlohmann::json{"0", "0", "0", "1", "0", "0", "4"});
    spec.pair = false;
    spec.check = true;
    spec.d = 7;
    spec.t_max = 3;
    auto a = run(spec);
    CHECK(a.exit_code == exit_ok);
    CHECK(a.output == run(spec).output);
}

TEST_CASE("validation errors exit with 2")
{
    auto spec = job(Command::betti);
    spec.m = 2;
    spec.n = 2;
    spec.d = 9;
    spec.u_max = 4;
    auto r = run(spec);
    CHECK(r.exit_code == exit_validation);
    CHECK(r.error.find("m=2 n=2 d=9") != std::string::npos);
    CHECK(r.output.empty());
    spec.n = 1;
    spec.d = 3;
    CHECK(run(spec).exit_code == exit_validation);
    auto radius = job(Command::radius);
    radius.m = 0;
    CHECK(run(radius).exit_code == exit_validation);
    auto verify_job = job(Command::verify);
    verify_job.suite = "nothing";
    CHECK(run(verify_job).exit_code == exit_validation);
    auto poincare = job(Command::series);
    poincare.series_kind = "poincare";
    poincare.n = 2;
    poincare.order = 3;
    poincare.p_max = 2;
    CHECK(run(poincare).exit_code == exit_validation);
}

TEST_CASE("cached and uncached runs print the same bytes")
{
    const auto dir = std::filesystem::temp_directory_path() / "linkshom_cli_cache_test";
    std::filesystem::remove_all(dir);
    auto spec = job(Command::betti);
    spec.m = 2;
    spec.d = 7;
    spec.u_max = 9;
    const auto memory_only = run(spec).output;
    spec.cache_dir = dir.string();
    const auto cold = run(spec).output;
    const auto warm = run(spec).output;
    CHECK(cold == memory_only);
    CHECK(warm == cold);
    CHECK(!std::filesystem::is_empty(dir));
    std::filesystem::remove_all(dir);
}

TEST_CASE("other commands")
{
    auto basis = job(Command::basis);
    basis.points = 3;
    basis.t = 2;
    auto doc = nlohmann::json::parse(run(basis).output);
    CHECK(doc["dimension"] == 2);
    CHECK(doc["basis"].size() == 2);
    auto model = job(Command::model);
    model.m = 2;
    model.p = 3;
    CHECK(nlohmann::json::parse(run(model).output)["levels"][3]["size"] == 7);
    auto radius = job(Command::radius);
    radius.m = 1;
    radius.d = 6;
    CHECK(nlohmann::json::parse(run(radius).output)["link_bound"] == 1.0);
    auto series = job(Command::series);
    series.series_kind = "poincare";
    series.m = 1;
    series.d = 7;
    series.order = 4;
    CHECK(nlohmann::json::parse(run(series).output)["series"]["coeffs"] ==
          nlohmann::json{"1", "0", "0", "0", "1"});
    auto v = job(Command::verify);
    v.suite = "simplicial";
    auto r = run(v);
    CHECK(r.exit_code == exit_ok);
    CHECK(nlohmann::json::parse(r.output)["passed"] == true);
}
