#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "detail.hpp"
#include "wpcn/analytic.hpp"
#include "wpcn/error.hpp"

namespace wpcn {
namespace {

std::string lowercase(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return out;
}

}  // namespace

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::RS: return "RS";
        case Scheme::SBS: return "SBS";
        case Scheme::EBS: return "EBS";
        case Scheme::IBS: return "IBS";
        case Scheme::MMS: return "MMS";
    }
    return "?";
}

std::string to_string(PairScheme scheme) {
    return scheme == PairScheme::RS ? "RS-pair" : "SBS-pair";
}

std::string to_string(Method method) {
    switch (method) {
        case Method::Analytic: return "analytic";
        case Method::HighSnr: return "highsnr";
        case Method::Evt: return "evt";
        case Method::MonteCarlo: return "mc";
    }
    return "?";
}

Scheme parse_scheme(std::string_view text) {
    const auto s = lowercase(text);
    if (s == "rs") return Scheme::RS;
    if (s == "sbs") return Scheme::SBS;
    if (s == "ebs") return Scheme::EBS;
    if (s == "ibs") return Scheme::IBS;
    if (s == "mms") return Scheme::MMS;
    throw DomainError("unknown scheme '" + std::string(text) + "' (expected RS, SBS, EBS, IBS or MMS)");
}

PairScheme parse_pair_scheme(std::string_view text) {
    const auto s = lowercase(text);
    if (s == "rs" || s == "rs-pair") return PairScheme::RS;
    if (s == "sbs" || s == "sbs-pair") return PairScheme::SBS;
    throw DomainError("unknown pair scheme '" + std::string(text) + "' (expected RS-pair or SBS-pair)");
}

Method parse_method(std::string_view text) {
    const auto s = lowercase(text);
    if (s == "analytic") return Method::Analytic;
    if (s == "highsnr" || s == "high-snr") return Method::HighSnr;
    if (s == "evt") return Method::Evt;
    if (s == "mc" || s == "montecarlo" || s == "monte-carlo") return Method::MonteCarlo;
    throw DomainError("unknown method '" + std::string(text) + "' (expected analytic, highsnr, evt or mc)");
}

void SchemeSpec::validate(unsigned num_devices) const {
    if (k < 1 || k > num_devices) {
        throw DomainError("order index k=" + std::to_string(k) + " outside [1, M=" + std::to_string(num_devices) + "]");
    }
}

void PairSpec::validate(unsigned num_devices) const {
    if (k < 1 || j > num_devices || k >= j) {
        throw DomainError("pair indices need 1 <= k < j <= M (k=" + std::to_string(k) + ", j=" + std::to_string(j) +
                          ", M=" + std::to_string(num_devices) + ")");
    }
}

ParentModel parent_of(EhModel model) {
    return model == EhModel::Linear ? ParentModel::Linear : ParentModel::NonLinear;
}

double saturation_gain(double x, const SystemParams& params) {
    return detail::link_constants(x, params).r;
}

double parent_cdf(double x, const SystemParams& params, ParentModel model) {
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const auto lc = detail::link_constants(x, params);
    switch (model) {
        case ParentModel::HighSnr: return -std::expm1(-lc.r);
        case ParentModel::Linear: return special::one_minus_x_k1(2.0 * std::sqrt(lc.beta_lin));
        case ParentModel::NonLinear:
            return -std::expm1(-lc.r) + std::exp(-lc.r) * special::one_minus_x_k1(2.0 * std::sqrt(lc.beta));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double parent_sf(double x, const SystemParams& params, ParentModel model) {
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    const auto lc = detail::link_constants(x, params);
    switch (model) {
        case ParentModel::HighSnr: return std::exp(-lc.r);
        case ParentModel::Linear: return detail::x_k1(2.0 * std::sqrt(lc.beta_lin));
        case ParentModel::NonLinear: return std::exp(-lc.r) * detail::x_k1(2.0 * std::sqrt(lc.beta));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double parent_pdf(double x, const SystemParams& params, ParentModel model) {
    if (x < 0.0 || std::isinf(x)) return 0.0;
    const auto unit = detail::link_constants(1.0, params);  // per-unit-x constants
    const double kappa = unit.r;
    if (model == ParentModel::HighSnr) return kappa * std::exp(-kappa * x);
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    if (model == ParentModel::Linear) {
        const double u = 2.0 * std::sqrt(unit.beta_lin * x);
        return 2.0 * unit.beta_lin * special::bessel_k0(u);
    }
    const double lambda = unit.beta;
    const double u = 2.0 * std::sqrt(lambda * x);
    return std::exp(-kappa * x) * (kappa * detail::x_k1(u) + 2.0 * lambda * special::bessel_k0(u));
}

double ibs_phi(double x, double delta, const SystemParams& params) {
    if (!(delta > 0.0)) throw DomainError("ibs_phi: delta must be positive");
    const auto lc = detail::link_constants(x, params);
    const double v = 2.0 * std::sqrt(lc.beta * delta);
    return std::exp(-delta * lc.r) * detail::x_k1(v) / delta;
}

}  // namespace wpcn
