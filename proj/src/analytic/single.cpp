#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "detail.hpp"
#include "wpcn/analytic.hpp"
#include "wpcn/error.hpp"

namespace wpcn {
namespace {

using detail::AlternatingSum;
using detail::clamp_probability;
using detail::x_k1;

constexpr double kEps = std::numeric_limits<double>::epsilon();

void prelude(double x, const SchemeSpec& spec, const SystemParams& params, const char* where) {
    detail::check_threshold(x, where);
    params.validate();
    spec.validate(params.num_devices);
}

OutageEstimate make(double value, Method method) {
    return {clamp_probability(value), method, std::nullopt};
}

// x = 0 can never be missed; x = inf (t2 -> 0) is always missed.
std::optional<OutageEstimate> trivial(double x, Method method) {
    if (x == 0.0) return make(0.0, method);
    if (std::isinf(x)) return make(1.0, method);
    return std::nullopt;
}

// Signed coefficient k C(M,k) (-1)^m C(M-k, m), shared by all alternating sums.
class BinomialWeights {
public:
    BinomialWeights(unsigned k, unsigned M) : k_(k), M_(M), prefactor_(k * special::binomial(M, k)) {}
    unsigned terms() const { return M_ - k_ + 1; }
    double prefactor() const { return prefactor_; }
    double weight(unsigned m) const {
        const double c = special::binomial(M_ - k_, m);
        return (m % 2 == 0) ? c : -c;
    }

private:
    unsigned k_;
    unsigned M_;
    double prefactor_;
};

bool try_binomial(SumRoute route, unsigned k, unsigned M, const char* where) {
    if (route == SumRoute::Integral) return false;
    if (detail::binomial_route_feasible(k, M)) return true;
    if (route == SumRoute::Binomial) {
        throw AccuracyError(std::string(where) + ": binomial coefficients out of double range for M=" +
                                std::to_string(M),
                            std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity());
    }
    return false;
}

// Outage when the device with the k-th largest downlink gain y is chosen and
// outage means h < r + beta / y (r = 0 for the linear model).
double energy_ranked(double r, double beta, unsigned k, unsigned M, const EvalOptions& opt) {
    constexpr const char* where = "outage_ebs";
    if (try_binomial(opt.route, k, M, where)) {
        BinomialWeights bw(k, M);
        AlternatingSum sum;
        for (unsigned m = 0; m < bw.terms(); ++m) {
            const double delta = k + m;
            sum.add(bw.weight(m) * x_k1(2.0 * std::sqrt(beta * delta)) / delta);
        }
        const double outer = bw.prefactor() * std::exp(-r);
        const double result = 1.0 - outer * sum.value();
        if (detail::accept_binomial(result, outer * sum.error_bound() + kEps, opt.route, where)) return result;
    }
    const auto g = [r, beta](double y) { return -std::expm1(-r - beta / y); };
    return detail::integrate_against_kth(g, 0.0, std::numeric_limits<double>::infinity(), k, M, 1.0,
                                         opt.quadrature);
}

double uplink_ranked(double r, double beta, double x, const SystemParams& params, unsigned k, unsigned M,
                     const EvalOptions& opt) {
    constexpr const char* where = "outage_ibs";
    if (try_binomial(opt.route, k, M, where)) {
        BinomialWeights bw(k, M);
        AlternatingSum sum;
        for (unsigned m = 0; m < bw.terms(); ++m) {
            sum.add(bw.weight(m) * ibs_phi(x, k + m, params));
        }
        const double result = 1.0 - bw.prefactor() * sum.value();
        if (detail::accept_binomial(result, bw.prefactor() * sum.error_bound() + kEps, opt.route, where)) {
            return result;
        }
    }
    const auto g = [r, beta](double z) { return -std::expm1(-beta / (z - r)); };
    return detail::kth_cdf(r, k, M, 1.0) +
           detail::integrate_against_kth(g, r, std::numeric_limits<double>::infinity(), k, M, 1.0, opt.quadrature);
}

double uplink_ranked_floor(double r, unsigned k, unsigned M, const EvalOptions& opt) {
    constexpr const char* where = "outage_ibs_high_snr";
    if (try_binomial(opt.route, k, M, where)) {
        BinomialWeights bw(k, M);
        AlternatingSum sum;
        for (unsigned m = 0; m < bw.terms(); ++m) {
            const double delta = k + m;
            sum.add(bw.weight(m) * std::exp(-r * delta) / delta);
        }
        const double result = 1.0 - bw.prefactor() * sum.value();
        if (detail::accept_binomial(result, bw.prefactor() * sum.error_bound() + kEps, opt.route, where)) {
            return result;
        }
    }
    return detail::kth_cdf(r, k, M, 1.0);
}

// Max-min selection. The selected device's weaker link is the k-th largest of
// M Exp(2) variables; given it equals y, the other link is y + Exp(1) and is
// the uplink or the downlink with probability 1/2 each.
//   w(y) = r + beta / y: largest uplink gain in outage when the downlink is y
//   v(z) = beta / (z - r): largest downlink gain in outage when the uplink is z
// Both cross the diagonal at s = sqrt(r^2/4 + beta) + r/2. The linear model is
// the r = 0 case with beta replaced by its linear counterpart.
double max_min_ranked(double r, double beta, unsigned k, unsigned M, const EvalOptions& opt) {
    constexpr const char* where = "outage_mms";
    const double s = std::sqrt(r * r / 4.0 + beta) + r / 2.0;
    const auto w = [r, beta](double y) { return r + beta / y; };
    const auto v = [r, beta](double z) { return beta / (z - r); };
    if (try_binomial(opt.route, k, M, where)) {
        BinomialWeights bw(k, M);
        AlternatingSum sum;
        const auto qs = detail::relative_spec(opt.quadrature);
        for (unsigned m = 0; m < bw.terms(); ++m) {
            const double delta = k + m;
            const double tail = 2.0 * delta - 1.0;
            const auto down = special::integrate_finite(
                [&](double y) { return y > 0.0 ? std::exp(-w(y) - tail * y) : 0.0; }, 0.0, s, qs);
            const auto up = special::integrate_finite(
                [&](double z) { return z > r ? std::exp(-v(z) - tail * z) : 0.0; }, r, s, qs);
            const double lead = -std::expm1(-2.0 * delta * s) / delta;
            const double weight = bw.weight(m);
            sum.add(weight * (lead - down.value - up.value),
                    std::fabs(weight) * (down.abs_error + up.abs_error + 4.0 * kEps * lead));
        }
        const double result = bw.prefactor() * sum.value();
        if (detail::accept_binomial(result, bw.prefactor() * sum.error_bound(), opt.route, where)) return result;
    }
    const auto down_term = [&](double y) { return -std::expm1(-(w(y) - y)); };
    const auto up_term = [&](double z) { return -std::expm1(-(v(z) - z)); };
    return 0.5 * detail::integrate_against_kth(down_term, 0.0, s, k, M, 2.0, opt.quadrature) +
           0.5 * detail::kth_cdf(r, k, M, 2.0) +
           0.5 * detail::integrate_against_kth(up_term, r, s, k, M, 2.0, opt.quadrature);
}

double max_min_floor(double r, unsigned k, unsigned M, const EvalOptions& opt) {
    constexpr const char* where = "outage_mms_high_snr";
    if (try_binomial(opt.route, k, M, where)) {
        BinomialWeights bw(k, M);
        AlternatingSum sum;
        for (unsigned m = 0; m < bw.terms(); ++m) {
            const double delta = k + m;
            const double tail = 2.0 * delta - 1.0;
            const double lead = -std::expm1(-2.0 * delta * r) / delta;
            const double cross = std::exp(-r) * -std::expm1(-tail * r) / tail;
            sum.add(bw.weight(m) * (lead - cross));
        }
        const double result = bw.prefactor() * sum.value();
        if (detail::accept_binomial(result, bw.prefactor() * sum.error_bound(), opt.route, where)) return result;
    }
    const auto down_term = [r](double y) { return -std::expm1(-(r - y)); };
    return 0.5 * detail::integrate_against_kth(down_term, 0.0, r, k, M, 2.0, opt.quadrature) +
           0.5 * detail::kth_cdf(r, k, M, 2.0);
}

}  // namespace

OutageEstimate outage_rs(double x, const SystemParams& params, EhModel model) {
    detail::check_threshold(x, "outage_rs");
    params.validate();
    return make(parent_cdf(x, params, parent_of(model)), Method::Analytic);
}

OutageEstimate outage_rs_high_snr(double x, const SystemParams& params) {
    detail::check_threshold(x, "outage_rs_high_snr");
    params.validate();
    return make(parent_cdf(x, params, ParentModel::HighSnr), Method::HighSnr);
}

OutageEstimate outage_sbs(double x, const SchemeSpec& spec, const SystemParams& params) {
    prelude(x, spec, params, "outage_sbs");
    if (auto t = trivial(x, Method::Analytic)) return *t;
    const auto parent = parent_of(spec.model);
    const unsigned M = params.num_devices;
    return make(special::reg_inc_beta(parent_cdf(x, params, parent), parent_sf(x, params, parent), M - spec.k + 1.0,
                                      spec.k),
                Method::Analytic);
}

OutageEstimate outage_sbs_high_snr(double x, const SchemeSpec& spec, const SystemParams& params) {
    prelude(x, spec, params, "outage_sbs_high_snr");
    if (auto t = trivial(x, Method::HighSnr)) return *t;
    const double r = saturation_gain(x, params);
    return make(detail::kth_cdf(r, spec.k, params.num_devices, 1.0), Method::HighSnr);
}

OutageEstimate outage_ebs(double x, const SchemeSpec& spec, const SystemParams& params, const EvalOptions& options) {
    prelude(x, spec, params, "outage_ebs");
    if (auto t = trivial(x, Method::Analytic)) return *t;
    const auto lc = detail::link_constants(x, params);
    const bool linear = spec.model == EhModel::Linear;
    return make(energy_ranked(linear ? 0.0 : lc.r, linear ? lc.beta_lin : lc.beta, spec.k, params.num_devices,
                              options),
                Method::Analytic);
}

OutageEstimate outage_ebs_high_snr(double x, const SystemParams& params) {
    // Once the rectifier saturates every device harvests the same energy, so
    // energy ranking is no better than a random pick.
    return outage_rs_high_snr(x, params);
}

OutageEstimate outage_ibs(double x, const SchemeSpec& spec, const SystemParams& params, const EvalOptions& options) {
    if (spec.model == EhModel::Linear) {
        // h g is symmetric in the two links, so ranking on either one gives the same outage.
        return outage_ebs(x, spec, params, options);
    }
    prelude(x, spec, params, "outage_ibs");
    if (auto t = trivial(x, Method::Analytic)) return *t;
    const auto lc = detail::link_constants(x, params);
    return make(uplink_ranked(lc.r, lc.beta, x, params, spec.k, params.num_devices, options), Method::Analytic);
}

OutageEstimate outage_ibs_high_snr(double x, const SchemeSpec& spec, const SystemParams& params,
                                   const EvalOptions& options) {
    prelude(x, spec, params, "outage_ibs_high_snr");
    if (auto t = trivial(x, Method::HighSnr)) return *t;
    return make(uplink_ranked_floor(saturation_gain(x, params), spec.k, params.num_devices, options),
                Method::HighSnr);
}

OutageEstimate outage_mms(double x, const SchemeSpec& spec, const SystemParams& params, const EvalOptions& options) {
    prelude(x, spec, params, "outage_mms");
    if (auto t = trivial(x, Method::Analytic)) return *t;
    const auto lc = detail::link_constants(x, params);
    const bool linear = spec.model == EhModel::Linear;
    return make(max_min_ranked(linear ? 0.0 : lc.r, linear ? lc.beta_lin : lc.beta, spec.k, params.num_devices,
                               options),
                Method::Analytic);
}

OutageEstimate outage_mms_high_snr(double x, const SchemeSpec& spec, const SystemParams& params,
                                   const EvalOptions& options) {
    prelude(x, spec, params, "outage_mms_high_snr");
    if (auto t = trivial(x, Method::HighSnr)) return *t;
    return make(max_min_floor(saturation_gain(x, params), spec.k, params.num_devices, options), Method::HighSnr);
}

OutageEstimate outage(double x, const SchemeSpec& spec, const SystemParams& params, Method method,
                      const EvalOptions& options) {
    if (method == Method::HighSnr) {
        if (spec.model == EhModel::Linear) {
            prelude(x, spec, params, "outage");
            return make(0.0, Method::HighSnr);
        }
        switch (spec.scheme) {
            case Scheme::RS: return outage_rs_high_snr(x, params);
            case Scheme::SBS: return outage_sbs_high_snr(x, spec, params);
            case Scheme::EBS:
                spec.validate(params.num_devices);
                return outage_ebs_high_snr(x, params);
            case Scheme::IBS: return outage_ibs_high_snr(x, spec, params, options);
            case Scheme::MMS: return outage_mms_high_snr(x, spec, params, options);
        }
    }
    if (method != Method::Analytic) {
        throw DomainError("analytic dispatch supports only the analytic and highsnr methods, got " + to_string(method));
    }
    switch (spec.scheme) {
        case Scheme::RS:
            spec.validate(params.num_devices);
            return outage_rs(x, params, spec.model);
        case Scheme::SBS: return outage_sbs(x, spec, params);
        case Scheme::EBS: return outage_ebs(x, spec, params, options);
        case Scheme::IBS: return outage_ibs(x, spec, params, options);
        case Scheme::MMS: return outage_mms(x, spec, params, options);
    }
    throw DomainError("unknown scheme");
}

}  // namespace wpcn
