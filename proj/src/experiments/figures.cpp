#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "wpcn/error.hpp"
#include "wpcn/experiments.hpp"

namespace wpcn::experiments {
namespace {

constexpr Scheme kAllSchemes[] = {Scheme::RS, Scheme::SBS, Scheme::EBS, Scheme::IBS, Scheme::MMS};
constexpr Scheme kSelectiveSchemes[] = {Scheme::SBS, Scheme::EBS, Scheme::IBS, Scheme::MMS};

struct FigureBuilder {
    const FigureOptions& options;
    SweepResult result;
    nlohmann::json parts = nlohmann::json::array();

    ExperimentConfig base() const {
        ExperimentConfig c;
        c.trials = options.trials;
        c.seed = options.seed;
        c.workers = options.workers;
        return c;
    }

    std::vector<Method> methods(std::vector<Method> deterministic, bool with_mc = true) const {
        if (with_mc && options.monte_carlo) deterministic.push_back(Method::MonteCarlo);
        return deterministic;
    }

    void add(const ExperimentConfig& config) {
        auto part = run_sweep(config);
        const std::size_t offset = result.rows.size();
        for (auto& row : part.rows) result.rows.push_back(std::move(row));
        for (auto& err : part.metadata["errors"]) {
            err["row"] = err["row"].get<std::size_t>() + offset;
            result.metadata["errors"].push_back(err);
        }
        parts.push_back(part.metadata["config"]);
    }
};

void power_sweep(FigureBuilder& fb, unsigned k) {
    const auto grid = range_grid(-40.0, 20.0, 2.0);
    for (Scheme s : kAllSchemes) {
        for (EhModel model : {EhModel::NonLinear, EhModel::Linear}) {
            ExperimentConfig c = fb.base();
            c.scheme = s;
            c.k = k;
            c.model = model;
            c.methods = fb.methods(model == EhModel::NonLinear ? std::vector<Method>{Method::Analytic, Method::HighSnr}
                                                                : std::vector<Method>{Method::Analytic});
            c.sweep = SweepParameter::TransmitPowerDbm;
            c.grid = grid;
            fb.add(c);
        }
    }
}

void order_sweep(FigureBuilder& fb, unsigned m) {
    for (Scheme s : kAllSchemes) {
        ExperimentConfig c = fb.base();
        c.scheme = s;
        c.m = m;
        c.methods = fb.methods({Method::Analytic});
        c.sweep = SweepParameter::K;
        c.grid = range_grid(1.0, m, 1.0);
        fb.add(c);
    }
}

void pair_sweep(FigureBuilder& fb) {
    for (unsigned m : {10u, 20u, 30u}) {
        for (unsigned k : {1u, 2u}) {
            for (unsigned j = 3; j <= m; ++j) {
                ExperimentConfig c = fb.base();
                c.scheme = Scheme::SBS;
                c.m = m;
                c.k = k;
                c.j = j;
                c.q_db = -4.0;
                c.pt_dbm = -40.0;
                c.methods = fb.methods({Method::Analytic});
                fb.add(c);
            }
        }
    }
}

void population_sweep(FigureBuilder& fb) {
    for (Scheme s : kSelectiveSchemes) {
        for (unsigned k : {1u, 2u}) {
            ExperimentConfig c = fb.base();
            c.scheme = s;
            c.k = k;
            c.pt_dbm = -40.0;
            c.methods = {Method::Evt, Method::Analytic};
            c.sweep = SweepParameter::M;
            c.grid = range_grid(10.0, 200.0, 10.0);
            fb.add(c);
        }
    }
}

void harvest_time_sweep(FigureBuilder& fb) {
    const auto grid = range_grid(0.02, 0.98, 0.02);
    nlohmann::json optima = nlohmann::json::object();
    for (Scheme s : kAllSchemes) {
        ExperimentConfig c = fb.base();
        c.scheme = s;
        c.k = 2;
        c.methods = {Method::Analytic};
        c.sweep = SweepParameter::T1;
        c.grid = grid;
        fb.add(c);
        if (fb.options.monte_carlo) {
            for (double sigma_e2 : {0.0, 0.1, 0.3}) {
                ExperimentConfig mc = c;
                mc.sigma_e2 = sigma_e2;
                mc.methods = {Method::MonteCarlo};
                fb.add(mc);
            }
        }
        const auto opt = find_optimal_t1({s, 2, EhModel::NonLinear}, c.system());
        optima[to_string(s)] = {{"t_star", opt.t_star}, {"outage", opt.outage}, {"unimodal", opt.unimodal}};
        if (!opt.warning.empty()) optima[to_string(s)]["warning"] = opt.warning;
    }
    fb.result.metadata["t1_optimum"] = optima;
}

}  // namespace

std::string to_string(FigureId id) {
    switch (id) {
        case FigureId::Fig2a: return "Fig2a";
        case FigureId::Fig2b: return "Fig2b";
        case FigureId::Fig3a: return "Fig3a";
        case FigureId::Fig3b: return "Fig3b";
        case FigureId::Fig4: return "Fig4";
        case FigureId::Fig5: return "Fig5";
        case FigureId::Fig6: return "Fig6";
    }
    return "?";
}

FigureId parse_figure_id(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    for (FigureId id : {FigureId::Fig2a, FigureId::Fig2b, FigureId::Fig3a, FigureId::Fig3b, FigureId::Fig4,
                        FigureId::Fig5, FigureId::Fig6}) {
        std::string name = to_string(id);
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (s == name) return id;
    }
    throw DomainError("unknown figure '" + std::string(text) + "' (expected Fig2a, Fig2b, Fig3a, Fig3b, Fig4, Fig5 or Fig6)");
}

SweepResult reproduce_figure(FigureId id, const FigureOptions& options) {
    FigureBuilder fb{options, {}, {}};
    fb.result.metadata = {{"version", kVersion},
                          {"figure", to_string(id)},
                          {"seed", options.seed},
                          {"trials", options.trials},
                          {"monte_carlo", options.monte_carlo},
                          {"errors", nlohmann::json::array()}};
    std::string description;
    switch (id) {
        case FigureId::Fig2a:
            description = "outage vs transmit power, k=2, M=5, all schemes, both EH models";
            power_sweep(fb, 2);
            break;
        case FigureId::Fig2b:
            description = "outage vs transmit power, k=4, M=5, all schemes, both EH models";
            power_sweep(fb, 4);
            break;
        case FigureId::Fig3a:
            description = "outage vs k, M=10, Pt=-10 dBm";
            order_sweep(fb, 10);
            break;
        case FigureId::Fig3b:
            description = "outage vs k, M=20, Pt=-10 dBm";
            order_sweep(fb, 20);
            break;
        case FigureId::Fig4:
            description = "SBS pair outage vs j, k in {1,2}, M in {10,20,30}, Q=-4 dB, Pt=-40 dBm";
            pair_sweep(fb);
            break;
        case FigureId::Fig5:
            description = "EVT and exact outage vs M (uniform grid 10..200), k in {1,2}, Pt=-40 dBm";
            population_sweep(fb);
            break;
        case FigureId::Fig6:
            description = "outage vs t1 (uniform grid 0.02..0.98), k=2, Pt=-10 dBm, sigma_e2 in {0,0.1,0.3} by Monte Carlo";
            harvest_time_sweep(fb);
            break;
    }
    fb.result.metadata["description"] = description;
    fb.result.metadata["parts"] = fb.parts;
    return std::move(fb.result);
}

}  // namespace wpcn::experiments
