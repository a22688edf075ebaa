#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>

#include "wpcn/error.hpp"
#include "wpcn/experiments.hpp"

namespace wpcn::experiments {
namespace {

using nlohmann::json;

std::string lowercase(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return out;
}

void reject_unknown_keys(const json& section, const std::set<std::string>& allowed, const std::string& name) {
    if (!section.is_object()) throw DomainError("config section '" + name + "' must be an object");
    for (const auto& item : section.items()) {
        if (!allowed.count(item.key())) {
            throw DomainError("unknown config key '" + name + "." + item.key() + "'");
        }
    }
}

template <typename T>
void read(const json& section, const char* key, T& target) {
    if (section.contains(key)) target = section.at(key).get<T>();
}

}  // namespace

std::vector<double> range_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
        throw DomainError("sweep range needs finite start/stop and a positive step");
    }
    std::vector<double> grid;
    const double span = stop - start;
    const auto count = static_cast<long>(std::floor(span / step + 1e-9));
    for (long i = 0; i <= count; ++i) {
        // Snap to 12 significant digits so 0.02 + 2 * 0.02 prints as 0.06.
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", start + static_cast<double>(i) * step);
        grid.push_back(std::strtod(buf, nullptr));
    }
    if (grid.empty()) throw DomainError("sweep range is empty");
    return grid;
}

std::string to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::TransmitPowerDbm: return "pt_dbm";
        case SweepParameter::K: return "k";
        case SweepParameter::M: return "m";
        case SweepParameter::T1: return "t1";
        case SweepParameter::SigmaE2: return "sigma_e2";
    }
    return "?";
}

SweepParameter parse_sweep_parameter(std::string_view text) {
    const auto s = lowercase(text);
    if (s == "pt_dbm" || s == "pt") return SweepParameter::TransmitPowerDbm;
    if (s == "k") return SweepParameter::K;
    if (s == "m") return SweepParameter::M;
    if (s == "t1") return SweepParameter::T1;
    if (s == "sigma_e2") return SweepParameter::SigmaE2;
    throw DomainError("unknown sweep parameter '" + std::string(text) + "' (expected pt_dbm, k, m, t1 or sigma_e2)");
}

SystemParams ExperimentConfig::system() const {
    SystemParams p;
    p.rectenna = rectenna;
    p.transmit_power = dbm_to_watts(pt_dbm);
    p.noise_variance = dbm_to_watts(noise_dbm);
    p.harvest_fraction = t1;
    p.rate_threshold_q = db_to_linear(q_db);
    p.num_devices = m;
    return p;
}

void ExperimentConfig::validate() const {
    system().validate();
    if (is_pair()) {
        if (scheme != Scheme::RS && scheme != Scheme::SBS) {
            throw DomainError("pair selection is defined for the RS and SBS schemes only");
        }
        PairSpec{scheme == Scheme::RS ? PairScheme::RS : PairScheme::SBS, k, *j, model}.validate(m);
    } else {
        SchemeSpec{scheme, k, model}.validate(m);
    }
    if (methods.empty()) throw DomainError("at least one method is required");
    if (!(sigma_e2 >= 0.0 && sigma_e2 < 1.0)) throw DomainError("sigma_e2 must lie in [0, 1)");
    if (trials < 1) throw DomainError("trials must be >= 1");
    if (sweep && grid.empty()) throw DomainError("sweep grid is empty");
    if (!(z_threshold > 0.0) || !(abs_tolerance >= 0.0)) throw DomainError("invalid comparison tolerances");
}

ExperimentConfig ExperimentConfig::at(SweepParameter parameter, double value) const {
    ExperimentConfig c = *this;
    c.sweep.reset();
    c.grid.clear();
    const auto as_index = [value](const char* name) {
        if (!(value >= 1.0) || value != std::floor(value)) {
            throw DomainError(std::string("sweep value for ") + name + " must be a positive integer");
        }
        return static_cast<unsigned>(value);
    };
    switch (parameter) {
        case SweepParameter::TransmitPowerDbm: c.pt_dbm = value; break;
        case SweepParameter::K: c.k = as_index("k"); break;
        case SweepParameter::M: c.m = as_index("m"); break;
        case SweepParameter::T1: c.t1 = value; break;
        case SweepParameter::SigmaE2: c.sigma_e2 = value; break;
    }
    return c;
}

json to_json(const ExperimentConfig& c) {
    json doc;
    doc["system"] = {{"a", c.rectenna.a}, {"b", c.rectenna.b}, {"c", c.rectenna.c}, {"pt_dbm", c.pt_dbm},
                     {"noise_dbm", c.noise_dbm}, {"t1", c.t1}, {"q_db", c.q_db}, {"m", c.m}};
    json methods = json::array();
    for (auto m : c.methods) methods.push_back(to_string(m));
    doc["scheme"] = {{"name", to_string(c.scheme)}, {"k", c.k}, {"model", to_string(c.model)}, {"methods", methods}};
    doc["scheme"]["j"] = c.j ? json(*c.j) : json(nullptr);
    doc["simulation"] = {{"trials", c.trials}, {"seed", c.seed}, {"sigma_e2", c.sigma_e2}};
    if (c.sweep) {
        doc["sweep"] = {{"parameter", to_string(*c.sweep)}, {"grid", c.grid}};
    }
    doc["compare"] = {{"z_threshold", c.z_threshold}, {"abs_tolerance", c.abs_tolerance}};
    return doc;
}

ExperimentConfig merge_json(const json& doc, ExperimentConfig c) {
    if (!doc.is_object()) throw DomainError("config document must be an object");
    reject_unknown_keys(doc, {"system", "scheme", "simulation", "sweep", "compare"}, "<root>");
    try {
        if (doc.contains("system")) {
            const auto& s = doc.at("system");
            reject_unknown_keys(s, {"a", "b", "c", "pt_dbm", "noise_dbm", "t1", "q_db", "m"}, "system");
            read(s, "a", c.rectenna.a);
            read(s, "b", c.rectenna.b);
            read(s, "c", c.rectenna.c);
            read(s, "pt_dbm", c.pt_dbm);
            read(s, "noise_dbm", c.noise_dbm);
            read(s, "t1", c.t1);
            read(s, "q_db", c.q_db);
            read(s, "m", c.m);
        }
        if (doc.contains("scheme")) {
            const auto& s = doc.at("scheme");
            reject_unknown_keys(s, {"name", "k", "j", "model", "methods"}, "scheme");
            if (s.contains("name")) c.scheme = parse_scheme(s.at("name").get<std::string>());
            read(s, "k", c.k);
            if (s.contains("j")) {
                if (s.at("j").is_null()) {
                    c.j.reset();
                } else {
                    c.j = s.at("j").get<unsigned>();
                }
            }
            if (s.contains("model")) c.model = parse_eh_model(s.at("model").get<std::string>());
            if (s.contains("methods")) {
                c.methods.clear();
                for (const auto& m : s.at("methods")) c.methods.push_back(parse_method(m.get<std::string>()));
            }
        }
        if (doc.contains("simulation")) {
            const auto& s = doc.at("simulation");
            reject_unknown_keys(s, {"trials", "seed", "sigma_e2"}, "simulation");
            read(s, "trials", c.trials);
            read(s, "seed", c.seed);
            read(s, "sigma_e2", c.sigma_e2);
        }
        if (doc.contains("sweep")) {
            const auto& s = doc.at("sweep");
            reject_unknown_keys(s, {"parameter", "grid", "start", "stop", "step"}, "sweep");
            if (s.contains("parameter")) c.sweep = parse_sweep_parameter(s.at("parameter").get<std::string>());
            if (s.contains("grid")) {
                c.grid = s.at("grid").get<std::vector<double>>();
            } else if (s.contains("start") || s.contains("stop") || s.contains("step")) {
                c.grid = range_grid(s.at("start").get<double>(), s.at("stop").get<double>(), s.at("step").get<double>());
            }
        }
        if (doc.contains("compare")) {
            const auto& s = doc.at("compare");
            reject_unknown_keys(s, {"z_threshold", "abs_tolerance"}, "compare");
            read(s, "z_threshold", c.z_threshold);
            read(s, "abs_tolerance", c.abs_tolerance);
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed config: ") + e.what());
    }
    return c;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DomainError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return merge_json(doc, std::move(base));
}

}  // namespace wpcn::experiments
