#include "wpcn/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "wpcn/error.hpp"

namespace wpcn {

std::string to_string(EhModel model) {
    return model == EhModel::Linear ? "linear" : "nonlinear";
}

EhModel parse_eh_model(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "nonlinear" || lower == "non-linear") return EhModel::NonLinear;
    if (lower == "linear") return EhModel::Linear;
    throw DomainError("unknown EH model '" + std::string(text) + "' (expected linear or nonlinear)");
}

void RectennaParams::validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
        throw DomainError("rectenna constants a, b, c must be positive");
    }
    if (!(a * c - b > 0.0)) {
        throw DomainError("rectenna constants must satisfy a*c - b > 0 (got " + std::to_string(a * c - b) + ")");
    }
}

void SystemParams::validate() const {
    rectenna.validate();
    if (!(transmit_power > 0.0) || !std::isfinite(transmit_power)) {
        throw DomainError("transmit power must be positive and finite");
    }
    if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
        throw DomainError("noise variance must be positive and finite");
    }
    if (!(harvest_fraction > 0.0 && harvest_fraction < 1.0)) {
        throw DomainError("harvest fraction t1 must lie in (0, 1), got " + std::to_string(harvest_fraction));
    }
    if (!(rate_threshold_q >= 0.0) || !std::isfinite(rate_threshold_q)) {
        throw DomainError("rate threshold Q must be non-negative and finite");
    }
    if (num_devices < 1) throw DomainError("number of devices M must be at least 1");
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double value) { return 10.0 * std::log10(value); }

double harvested_energy(double gain_g, const SystemParams& params, EhModel model) {
    if (!(gain_g >= 0.0)) throw DomainError("harvested_energy: gain must be non-negative");
    const double received = params.transmit_power * gain_g;
    if (model == EhModel::Linear) return params.t1() * received;
    const auto& rt = params.rectenna;
    // Same as t1((a p + b)/(p + c) - b/c), rearranged to avoid cancellation at small p.
    return params.t1() * received * (rt.a * rt.c - rt.b) / (rt.c * (received + rt.c));
}

double snr(double gain_h, double energy, const SystemParams& params) {
    return gain_h * energy / (params.t2() * params.noise_variance);
}

double threshold_x(const SystemParams& params) {
    return std::expm1(std::log(2.0) * params.rate_threshold_q / params.t2());
}

}  // namespace wpcn
