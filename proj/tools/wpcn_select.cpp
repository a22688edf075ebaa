// wpcn-select: outage probability of k-th best device selection in a
// wireless powered network (analytic, high-SNR floor, EVT, Monte Carlo).

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wpcn/analytic.hpp"
#include "wpcn/error.hpp"
#include "wpcn/experiments.hpp"

namespace ex = wpcn::experiments;

namespace {

// Flag values; unset optionals leave the config file / defaults untouched.
struct Flags {
    std::string config_path;
    std::optional<std::string> scheme;
    std::optional<unsigned> k;
    std::optional<unsigned> j;
    std::optional<std::string> model;
    std::vector<std::string> methods;
    std::optional<double> pt_dbm;
    std::optional<double> t1;
    std::optional<double> q_db;
    std::optional<double> noise_dbm;
    std::optional<unsigned> m;
    std::optional<double> sigma_e2;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::string out;
    std::string format = "csv";

    std::optional<std::string> param;
    std::vector<double> grid;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<double> step;

    std::optional<double> z_threshold;
    std::optional<double> abs_tolerance;
};

void add_system_flags(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config_path, "JSON config file (flags override its values)");
    app->add_option("--scheme", f.scheme, "RS, SBS, EBS, IBS or MMS");
    app->add_option("--k", f.k, "order index of the selected device (1 = best)");
    app->add_option("--j", f.j, "order index of the second device (pair selection, RS or SBS)");
    app->add_option("--model", f.model, "energy-harvesting model: nonlinear or linear");
    app->add_option("--pt-dbm", f.pt_dbm, "transmit power [dBm]");
    app->add_option("--t1", f.t1, "harvesting fraction of the slot");
    app->add_option("--q-db", f.q_db, "rate threshold Q [dB]");
    app->add_option("--noise-dbm", f.noise_dbm, "noise variance [dBm]");
    app->add_option("--m", f.m, "number of devices M");
}

void add_run_flags(CLI::App* app, Flags& f, bool with_method) {
    add_system_flags(app, f);
    if (with_method) {
        app->add_option("--method", f.methods, "analytic, highsnr, evt, mc (repeat or comma-separate)")
            ->delimiter(',');
    }
    app->add_option("--sigma-e2", f.sigma_e2, "channel-estimation error variance (Monte Carlo)");
    app->add_option("--trials", f.trials, "Monte Carlo trials");
    app->add_option("--seed", f.seed, "Monte Carlo seed");
    app->add_option("--threads", f.threads, "worker threads (results do not depend on it)");
    app->add_option("--out", f.out, "output file (default: stdout)");
    app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_sweep_flags(CLI::App* app, Flags& f) {
    app->add_option("--param", f.param, "swept parameter: pt_dbm, k, m, t1, sigma_e2");
    app->add_option("--grid", f.grid, "explicit grid values (comma-separated)")->delimiter(',');
    app->add_option("--from", f.from, "grid start");
    app->add_option("--to", f.to, "grid end (inclusive)");
    app->add_option("--step", f.step, "grid step");
}

ex::ExperimentConfig build_config(const Flags& f) {
    ex::ExperimentConfig c;
    if (!f.config_path.empty()) c = ex::load_config_file(f.config_path, c);
    if (f.scheme) c.scheme = wpcn::parse_scheme(*f.scheme);
    if (f.k) c.k = *f.k;
    if (f.j) c.j = *f.j;
    if (f.model) c.model = wpcn::parse_eh_model(*f.model);
    if (!f.methods.empty()) {
        c.methods.clear();
        for (const auto& m : f.methods) c.methods.push_back(wpcn::parse_method(m));
    }
    if (f.pt_dbm) c.pt_dbm = *f.pt_dbm;
    if (f.t1) c.t1 = *f.t1;
    if (f.q_db) c.q_db = *f.q_db;
    if (f.noise_dbm) c.noise_dbm = *f.noise_dbm;
    if (f.m) c.m = *f.m;
    if (f.sigma_e2) c.sigma_e2 = *f.sigma_e2;
    if (f.trials) c.trials = *f.trials;
    if (f.seed) c.seed = *f.seed;
    if (f.threads) c.workers = *f.threads;
    if (f.param) c.sweep = ex::parse_sweep_parameter(*f.param);
    if (!f.grid.empty()) {
        c.grid = f.grid;
    } else if (f.from || f.to || f.step) {
        if (!(f.from && f.to && f.step)) throw wpcn::DomainError("--from, --to and --step go together");
        c.grid = ex::range_grid(*f.from, *f.to, *f.step);
    }
    if (f.z_threshold) c.z_threshold = *f.z_threshold;
    if (f.abs_tolerance) c.abs_tolerance = *f.abs_tolerance;
    return c;
}

void emit(const ex::SweepResult& result, const Flags& f) {
    if (!f.out.empty()) {
        ex::write_result(result, f.out, f.format);
        return;
    }
    if (f.format == "json") {
        nlohmann::json doc = {{"metadata", result.metadata}, {"rows", ex::rows_to_json(result.rows)}};
        std::cout << doc.dump(2) << '\n';
    } else {
        ex::write_csv(std::cout, result.rows);
    }
}

int report_row_errors(const ex::SweepResult& result) {
    int failures = 0;
    for (const auto& row : result.rows) {
        if (!row.error.empty()) {
            std::cerr << "error (" << row.scheme << " k=" << row.k << ", " << wpcn::to_string(row.method)
                      << "): " << row.error << '\n';
            ++failures;
        }
    }
    return failures;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage probability of k-th best device selection in wireless powered networks"};
    app.require_subcommand(1);
    Flags f;

    auto* compute = app.add_subcommand("compute", "evaluate one operating point");
    add_run_flags(compute, f, true);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate at one operating point");
    add_run_flags(simulate, f, false);

    auto* sweep = app.add_subcommand("sweep", "evaluate methods over a parameter grid");
    add_run_flags(sweep, f, true);
    add_sweep_flags(sweep, f);

    auto* compare = app.add_subcommand("compare", "compare methods point by point; exit 1 if any check fails");
    add_run_flags(compare, f, true);
    add_sweep_flags(compare, f);
    compare->add_option("--z-threshold", f.z_threshold, "allowed Monte Carlo z-score");
    compare->add_option("--abs-tol", f.abs_tolerance, "allowed absolute gap");

    std::string figure;
    bool no_mc = false;
    auto* reproduce = app.add_subcommand("reproduce-figure", "write the dataset behind one figure");
    reproduce->add_option("--figure", figure, "Fig2a, Fig2b, Fig3a, Fig3b, Fig4, Fig5 or Fig6")->required();
    reproduce->add_option("--trials", f.trials, "Monte Carlo trials per point (default 100000)");
    reproduce->add_option("--seed", f.seed, "Monte Carlo seed");
    reproduce->add_option("--threads", f.threads, "worker threads");
    reproduce->add_flag("--no-mc", no_mc, "skip Monte Carlo rows");
    reproduce->add_option("--out", f.out, "output file (default: stdout)");
    reproduce->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    double tolerance = 1e-4;
    auto* find_t1 = app.add_subcommand("find-t1", "harvesting fraction t1 minimizing the analytic outage");
    add_system_flags(find_t1, f);
    find_t1->add_option("--tolerance", tolerance, "golden-section interval tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute || *simulate || *sweep) {
            ex::ExperimentConfig config = build_config(f);
            if (*simulate) config.methods = {wpcn::Method::MonteCarlo};
            if (*sweep && !config.sweep) throw wpcn::DomainError("sweep needs --param (or a sweep section in --config)");
            if (!*sweep) {
                config.sweep.reset();
                config.grid.clear();
            }
            const auto result = ex::run_sweep(config);
            emit(result, f);
            return report_row_errors(result) == 0 ? 0 : 3;
        }
        if (*compare) {
            ex::ExperimentConfig config = build_config(f);
            if (f.methods.empty() && config.methods.size() < 2) {
                config.methods = {wpcn::Method::Analytic, wpcn::Method::MonteCarlo};
            }
            const auto report = ex::compare_methods(config);
            std::cout << report.summary();
            if (!f.out.empty()) {
                if (f.format == "json") {
                    std::ofstream out(f.out);
                    out << report.to_json().dump(2) << '\n';
                } else {
                    ex::SweepResult data = report.data;
                    data.metadata["comparisons"] = report.to_json()["comparisons"];
                    data.metadata["all_pass"] = report.all_pass;
                    ex::write_result(data, f.out, "csv");
                }
            }
            return report.all_pass ? 0 : 1;
        }
        if (*reproduce) {
            ex::FigureOptions options;
            if (f.trials) options.trials = *f.trials;
            if (f.seed) options.seed = *f.seed;
            if (f.threads) options.workers = *f.threads;
            options.monte_carlo = !no_mc;
            const auto result = ex::reproduce_figure(ex::parse_figure_id(figure), options);
            emit(result, f);
            return report_row_errors(result) == 0 ? 0 : 3;
        }
        if (*find_t1) {
            const ex::ExperimentConfig config = build_config(f);
            config.validate();
            const auto opt = ex::find_optimal_t1({config.scheme, config.k, config.model}, config.system(), tolerance);
            nlohmann::json doc = {{"scheme", wpcn::to_string(config.scheme)},
                                  {"k", config.k},
                                  {"model", wpcn::to_string(config.model)},
                                  {"t_star", opt.t_star},
                                  {"outage", opt.outage},
                                  {"unimodal", opt.unimodal}};
            if (!opt.warning.empty()) {
                doc["warning"] = opt.warning;
                std::cerr << "warning: " << opt.warning << '\n';
            }
            std::cout << doc.dump(2) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "wpcn-select: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
