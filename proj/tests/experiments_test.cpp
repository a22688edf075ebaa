#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "wpcn/error.hpp"
#include "wpcn/experiments.hpp"

using namespace wpcn;
using namespace wpcn::experiments;

namespace {

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    write_csv(out, rows);
    return out.str();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("range grid") {
    const auto g = range_grid(-40, 20, 2);
    REQUIRE(g.size() == 31);
    CHECK(g.front() == -40.0);
    CHECK(g.back() == 20.0);
    const auto t = range_grid(0.02, 0.98, 0.02);
    CHECK(t.size() == 49);
    CHECK(t[2] == 0.06);
    CHECK_THROWS_AS(range_grid(0, 1, 0), DomainError);
}

TEST_CASE("config JSON round-trip and overlay") {
    ExperimentConfig c;
    c.scheme = Scheme::MMS;
    c.k = 3;
    c.pt_dbm = -17.5;
    c.methods = {Method::Analytic, Method::MonteCarlo};
    c.sweep = SweepParameter::T1;
    c.grid = {0.2, 0.4};
    c.sigma_e2 = 0.1;
    const auto back = merge_json(to_json(c));
    CHECK(to_json(back) == to_json(c));

    // Only the keys present are overlaid.
    const auto partial = merge_json(nlohmann::json::parse(R"({"system": {"m": 9}, "scheme": {"name": "ebs"}})"), c);
    CHECK(partial.m == 9);
    CHECK(partial.scheme == Scheme::EBS);
    CHECK(partial.k == 3);
    CHECK(partial.pt_dbm == -17.5);

    const auto ranged = merge_json(nlohmann::json::parse(R"({"sweep": {"parameter": "pt_dbm", "start": -10, "stop": 0, "step": 5}})"));
    CHECK(ranged.grid == std::vector<double>{-10, -5, 0});

    CHECK_THROWS_AS(merge_json(nlohmann::json::parse(R"({"system": {"power": 1}})")), DomainError);
    CHECK_THROWS_AS(merge_json(nlohmann::json::parse(R"({"extra": {}})")), DomainError);
    CHECK_THROWS_AS(merge_json(nlohmann::json::parse(R"({"system": {"m": "five"}})")), DomainError);
}

TEST_CASE("config validation") {
    ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    c.k = 6;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.j = 4;
    c.scheme = Scheme::EBS;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.scheme = Scheme::SBS;
    CHECK_NOTHROW(c.validate());
    c = {};
    c.t1 = 1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.sweep = SweepParameter::K;
    CHECK_THROWS_AS(c.validate(), DomainError);  // empty grid
}

TEST_CASE("single point evaluation") {
    ExperimentConfig c;
    c.methods = {Method::Analytic, Method::HighSnr, Method::MonteCarlo};
    c.trials = 20000;
    const auto r = run_sweep(c);
    REQUIRE(r.rows.size() == 3);
    CHECK_FALSE(r.rows[0].std_error.has_value());
    CHECK_FALSE(r.rows[1].std_error.has_value());
    CHECK(r.rows[2].std_error.has_value());
    CHECK(r.rows[0].outage == doctest::Approx(1.044e-9).epsilon(1e-3));
    CHECK(r.rows[0].x_threshold == 3.0);
    CHECK(r.metadata["version"] == kVersion);
    CHECK(r.metadata["seed"] == 1);
    CHECK(r.metadata["errors"].empty());
}

TEST_CASE("evaluation errors become rows, not exceptions") {
    ExperimentConfig c;
    c.sigma_e2 = 0.2;
    const auto row = evaluate(c, Method::Analytic);
    CHECK(std::isnan(row.outage));
    CHECK_FALSE(row.error.empty());

    c = {};
    c.scheme = Scheme::RS;
    c.m = 10;
    const auto evt = evaluate(c, Method::Evt);
    CHECK_FALSE(evt.error.empty());
}

TEST_CASE("sweep rows follow the grid and the echo reproduces the run") {
    ExperimentConfig c;
    c.scheme = Scheme::IBS;
    c.sweep = SweepParameter::TransmitPowerDbm;
    c.grid = range_grid(-30, 10, 10);
    c.methods = {Method::Analytic, Method::Evt};
    c.m = 12;
    const auto r = run_sweep(c);
    REQUIRE(r.rows.size() == 10);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(r.rows[2 * i].pt_dbm == c.grid[i]);
        CHECK(r.rows[2 * i].method == Method::Analytic);
        CHECK(r.rows[2 * i + 1].method == Method::Evt);
    }
    const auto again = run_sweep(merge_json(r.metadata["config"]));
    CHECK(again.rows == r.rows);
    CHECK(r.metadata["sweep"]["grid"].size() == 5);
}

TEST_CASE("k and M sweeps") {
    ExperimentConfig c;
    c.m = 10;
    c.sweep = SweepParameter::K;
    c.grid = {1, 2, 3};
    auto r = run_sweep(c);
    CHECK(r.rows[2].k == 3);
    CHECK(r.rows[0].outage <= r.rows[1].outage);
    c.sweep = SweepParameter::M;
    c.grid = {5, 10, 20};
    c.k = 1;
    r = run_sweep(c);
    CHECK(r.rows[2].m == 20);
    CHECK(r.rows[2].outage <= r.rows[0].outage);
    c.grid = {2.5};
    CHECK_THROWS_AS(run_sweep(c), DomainError);
}

TEST_CASE("CSV schema and round-trip") {
    ExperimentConfig c;
    c.scheme = Scheme::SBS;
    c.j = 4;
    c.m = 6;
    c.q_db = -4;
    c.methods = {Method::Analytic, Method::MonteCarlo, Method::Evt};
    c.trials = 5000;
    const auto r = run_sweep(c);
    const std::string csv = to_csv(r.rows);
    CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    std::istringstream in(csv);
    const auto back = read_csv(in);
    REQUIRE(back.size() == r.rows.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        auto expect = r.rows[i];
        expect.error.clear();  // errors live in the metadata only
        CHECK(back[i] == expect);
    }
    CHECK(to_csv(back) == csv);
}

TEST_CASE("format_double is shortest round-trip") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 5e-324, -2.5, 123456789.0}) {
        // std::stod rejects subnormals; from_chars is what the CSV reader uses.
        const auto text = format_double(v);
        double back = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), back);
        CHECK(ec == std::errc());
        CHECK(ptr == text.data() + text.size());
        CHECK(back == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(3.0) == "3");
}

TEST_CASE("result files are byte-identical across runs") {
    const auto dir = std::filesystem::temp_directory_path() / "wpcn_experiments_test";
    std::filesystem::create_directories(dir);
    ExperimentConfig c;
    c.methods = {Method::Analytic, Method::MonteCarlo};
    c.trials = 30000;
    c.sweep = SweepParameter::SigmaE2;
    c.grid = {0.0, 0.3};
    for (const char* name : {"a.csv", "b.csv"}) write_result(run_sweep(c), (dir / name).string(), "csv");
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.csv.meta.json") == slurp(dir / "b.csv.meta.json"));
    write_result(run_sweep(c), (dir / "c.json").string(), "json");
    const auto doc = nlohmann::json::parse(slurp(dir / "c.json"));
    CHECK(doc.contains("rows"));
    CHECK(doc.contains("metadata"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("harvest-time optimum") {
    const auto p = SystemParams::defaults();
    std::vector<double> stars;
    for (auto s : {Scheme::SBS, Scheme::EBS, Scheme::IBS, Scheme::MMS}) {
        const auto opt = find_optimal_t1({s, 2}, p);
        INFO(to_string(s) << " t*=" << opt.t_star);
        CHECK(opt.unimodal);
        CHECK(opt.t_star >= 0.5056);
        CHECK(opt.t_star <= 0.5456);
        stars.push_back(opt.t_star);
    }
    for (double a : stars)
        for (double b : stars) CHECK(std::fabs(a - b) <= 0.02);

    auto edge = p;
    edge.harvest_fraction = 1e-8;
    CHECK(outage(threshold_x(edge), {Scheme::SBS, 2}, edge, Method::Analytic).value > 0.99);
    edge.harvest_fraction = 0.999;
    CHECK(outage(threshold_x(edge), {Scheme::SBS, 2}, edge, Method::Analytic).value > 0.99);
}

TEST_CASE("method comparison") {
    ExperimentConfig c;
    c.pt_dbm = 60;
    c.scheme = Scheme::MMS;
    c.methods = {Method::Analytic, Method::HighSnr};
    c.abs_tolerance = 1e-3;
    auto rep = compare_methods(c);
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.all_pass);

    c.methods = {Method::Analytic, Method::Analytic};
    rep = compare_methods(c);
    CHECK(rep.entries[0].gap == 0.0);

    c = {};
    c.scheme = Scheme::EBS;
    c.methods = {Method::Analytic, Method::MonteCarlo};
    c.trials = 200000;
    rep = compare_methods(c);
    CHECK(rep.all_pass);
    REQUIRE(rep.entries[0].z_score.has_value());
    CHECK(*rep.entries[0].z_score <= 3.0);
    CHECK(rep.to_json()["all_pass"] == true);
    CHECK(rep.summary().find("PASS") != std::string::npos);

    // A deliberately impossible tolerance must fail.
    c.methods = {Method::Analytic, Method::HighSnr};
    c.pt_dbm = -30;
    c.abs_tolerance = 1e-9;
    CHECK_FALSE(compare_methods(c).all_pass);
    c.methods = {Method::Analytic};
    CHECK_THROWS_AS(compare_methods(c), DomainError);
}

TEST_CASE("figure datasets") {
    FigureOptions opt;
    opt.monte_carlo = false;
    for (auto id : {FigureId::Fig2a, FigureId::Fig2b, FigureId::Fig3a, FigureId::Fig3b, FigureId::Fig4, FigureId::Fig5,
                    FigureId::Fig6}) {
        const auto r = reproduce_figure(id, opt);
        INFO(to_string(id));
        CHECK_FALSE(r.rows.empty());
        CHECK(r.metadata["errors"].empty());
        std::istringstream in(to_csv(r.rows));
        CHECK(to_csv(read_csv(in)) == to_csv(r.rows));
        CHECK(parse_figure_id(to_string(id)) == id);
    }

    const auto fig2 = reproduce_figure(FigureId::Fig2a, opt);
    std::set<std::string> schemes;
    bool linear = false;
    for (const auto& row : fig2.rows) {
        schemes.insert(row.scheme);
        linear |= row.model == EhModel::Linear;
    }
    CHECK(schemes == std::set<std::string>{"RS", "SBS", "EBS", "IBS", "MMS"});
    CHECK(linear);

    const auto fig5 = reproduce_figure(FigureId::Fig5, opt);
    std::set<Method> methods;
    for (const auto& row : fig5.rows) methods.insert(row.method);
    CHECK(methods == std::set<Method>{Method::Analytic, Method::Evt});

    const auto fig6 = reproduce_figure(FigureId::Fig6, opt);
    CHECK(fig6.metadata["t1_optimum"]["SBS"]["t_star"].get<double>() == doctest::Approx(0.5256).epsilon(0.04));

    FigureOptions mc;
    mc.trials = 2000;
    const auto with_mc = reproduce_figure(FigureId::Fig4, mc);
    bool has_mc = false;
    for (const auto& row : with_mc.rows) has_mc |= row.method == Method::MonteCarlo;
    CHECK(has_mc);
    CHECK_THROWS_AS(parse_figure_id("fig9"), DomainError);
}
