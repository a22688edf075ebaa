#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "wpcn/error.hpp"
#include "wpcn/evt.hpp"
#include "wpcn/experiments.hpp"
#include "wpcn/montecarlo.hpp"
#include "wpcn/parallel.hpp"

namespace wpcn::experiments {
namespace {

PairSpec pair_spec(const ExperimentConfig& c) {
    return {c.scheme == Scheme::RS ? PairScheme::RS : PairScheme::SBS, c.k, *c.j, c.model};
}

double swept_value(const ExperimentConfig& c, SweepParameter p) {
    switch (p) {
        case SweepParameter::TransmitPowerDbm: return c.pt_dbm;
        case SweepParameter::K: return c.k;
        case SweepParameter::M: return c.m;
        case SweepParameter::T1: return c.t1;
        case SweepParameter::SigmaE2: return c.sigma_e2;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

ResultRow evaluate(const ExperimentConfig& config, Method method) {
    ResultRow row;
    row.scheme = config.is_pair() ? to_string(pair_spec(config).scheme) : to_string(config.scheme);
    row.k = config.k;
    row.j = config.j;
    row.m = config.m;
    row.pt_dbm = config.pt_dbm;
    row.t1 = config.t1;
    row.q_db = config.q_db;
    row.sigma_n_dbm = config.noise_dbm;
    row.sigma_e2 = config.sigma_e2;
    row.model = config.model;
    row.method = method;
    try {
        config.validate();
        const SystemParams params = config.system();
        const double x = threshold_x(params);
        row.x_threshold = x;
        if (method != Method::MonteCarlo && config.sigma_e2 > 0.0) {
            throw DomainError("only Monte Carlo models channel-estimation error; set sigma_e2 = 0 for " +
                              to_string(method));
        }
        OutageEstimate est;
        switch (method) {
            case Method::Analytic:
                est = config.is_pair() ? outage_pair(x, pair_spec(config), params)
                                       : outage(x, {config.scheme, config.k, config.model}, params, method);
                break;
            case Method::HighSnr:
                est = config.is_pair() ? outage_pair_high_snr(x, pair_spec(config), params)
                                       : outage(x, {config.scheme, config.k, config.model}, params, method);
                break;
            case Method::Evt:
                est = config.is_pair() ? outage_evt_pair(x, pair_spec(config), params)
                                       : outage_evt(x, {config.scheme, config.k, config.model}, params);
                break;
            case Method::MonteCarlo: {
                TrialConfig trial;
                trial.num_trials = config.trials;
                trial.base_seed = config.seed;
                trial.estimation_error_var = config.sigma_e2;
                trial.params = params;
                trial.workers = config.workers;
                if (config.is_pair()) {
                    trial.spec = pair_spec(config);
                } else {
                    trial.spec = SchemeSpec{config.scheme, config.k, config.model};
                }
                est = simulate_outage(trial);
                break;
            }
        }
        row.outage = est.value;
        row.std_error = est.std_error;
    } catch (const std::exception& e) {
        row.outage = std::numeric_limits<double>::quiet_NaN();
        row.std_error.reset();
        row.error = e.what();
    }
    return row;
}

SweepResult run_sweep(const ExperimentConfig& config) {
    std::vector<ExperimentConfig> points;
    if (config.sweep) {
        if (config.grid.empty()) throw DomainError("sweep grid is empty");
        for (double v : config.grid) points.push_back(config.at(*config.sweep, v));
    } else {
        points.push_back(config);
    }
    if (config.methods.empty()) throw DomainError("at least one method is required");

    const std::size_t per_point = config.methods.size();
    SweepResult result;
    result.rows.resize(points.size() * per_point);
    std::vector<std::size_t> deterministic;
    std::vector<std::size_t> stochastic;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        (config.methods[i % per_point] == Method::MonteCarlo ? stochastic : deterministic).push_back(i);
    }
    // Deterministic rows are cheap and independent: spread them over workers.
    // Monte Carlo rows are parallel internally, so they run one after another.
    parallel_for(deterministic.size(), resolve_workers(config.workers), [&](std::size_t n) {
        const std::size_t i = deterministic[n];
        result.rows[i] = evaluate(points[i / per_point], config.methods[i % per_point]);
    });
    for (std::size_t i : stochastic) result.rows[i] = evaluate(points[i / per_point], config.methods[i % per_point]);

    nlohmann::json errors = nlohmann::json::array();
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        if (!result.rows[i].error.empty()) errors.push_back({{"row", i}, {"error", result.rows[i].error}});
    }
    result.metadata = {{"version", kVersion}, {"config", to_json(config)}, {"seed", config.seed}, {"errors", errors}};
    if (config.sweep) {
        nlohmann::json values = nlohmann::json::array();
        for (const auto& p : points) values.push_back(swept_value(p, *config.sweep));
        result.metadata["sweep"] = {{"parameter", to_string(*config.sweep)}, {"grid", values}};
    }
    return result;
}

}  // namespace wpcn::experiments
