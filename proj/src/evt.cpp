#include "wpcn/evt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "analytic/detail.hpp"
#include "wpcn/error.hpp"

namespace wpcn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void prelude(double x, unsigned k, const SystemParams& params, const char* where) {
    detail::check_threshold(x, where);
    params.validate();
    if (params.num_devices < 2) throw DomainError(std::string(where) + ": EVT needs M >= 2");
    if (k < 1 || k > params.num_devices) {
        throw DomainError(std::string(where) + ": order index k outside [1, M]");
    }
}

OutageEstimate make(double value) { return {detail::clamp_probability(value), Method::Evt, std::nullopt}; }

std::optional<OutageEstimate> trivial(double x) {
    if (x == 0.0) return make(0.0);
    if (std::isinf(x)) return make(1.0);
    return std::nullopt;
}

// (M^k / Gamma(k)) exp(-M e^{-rate y} - rate k y): the limiting density of the
// k-th largest of M Exp(rate) variables divided by rate. Over y >= 0 it
// integrates to P(k, M) / rate.
double log_limit_density(double y, unsigned k, double M, double rate) {
    return k * std::log(M) - special::log_gamma(k) - M * std::exp(-rate * y) - rate * k * y;
}

double integrate_against_limit(const special::Integrand& g, double lo, double hi, unsigned k, double M, double rate,
                               const special::QuadratureSpec& quadrature) {
    if (!(hi > lo)) return 0.0;
    const auto integrand = [&](double y) {
        const double gv = g(y);
        if (gv == 0.0) return 0.0;
        return gv * std::exp(log_limit_density(y, k, M, rate));
    };
    const auto qs = detail::relative_spec(quadrature);
    const double bulk = (std::log(M / k) + 6.0) / rate;
    if (std::isfinite(hi)) {
        if (bulk > lo && bulk < hi) {
            return special::integrate_finite(integrand, lo, bulk, qs).value +
                   special::integrate_finite(integrand, bulk, hi, qs).value;
        }
        return special::integrate_finite(integrand, lo, hi, qs).value;
    }
    const double split = std::max(lo, bulk);
    double total = 0.0;
    if (split > lo) total += special::integrate_finite(integrand, lo, split, qs).value;
    return total + special::integrate_semi_infinite(integrand, split, qs, 1.0 / (rate * k)).value;
}

double solve_survival(double log_target, const SystemParams& params, ParentModel parent) {
    const auto f = [&](double v) { return std::log(parent_sf(v, params, parent)) - log_target; };
    double hi = 1.0;
    int expansions = 0;
    while (f(hi) > 0.0) {
        hi *= 4.0;
        if (++expansions > 600 || !std::isfinite(hi)) {
            throw AccuracyError("normalizing_constants: could not bracket the SBS quantile", hi, kInf);
        }
    }
    std::uintmax_t iterations = 500;
    const auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3);
    const auto [a, b] = boost::math::tools::toms748_solve(f, 0.0, hi, 0.0 - log_target, f(hi), tol, iterations);
    if (iterations >= 500) {
        throw AccuracyError("normalizing_constants: root finder did not converge", 0.5 * (a + b), b - a);
    }
    return 0.5 * (a + b);
}

// Survival-function based marginal for the weaker device of an SBS pair:
// P(X_j > x (X_k + 1)) with the j-th best z and k-th best y > z requires
// y < (z - x) / x, possible only for z > x / (1 - x).
double weaker_failure_probability(double x, const PairSpec& pair, const SystemParams& params,
                                  const special::QuadratureSpec& quadrature) {
    const ParentModel parent = parent_of(pair.model);
    const unsigned M = params.num_devices;
    const unsigned k = pair.k;
    const unsigned j = pair.j;
    const double z0 = x / (1.0 - x);
    const double log_front = std::log(static_cast<double>(j)) + special::log_binomial(M, j);
    const auto density = [&](double z) {
        const double sf_z = parent_sf(z, params, parent);
        if (sf_z <= 0.0) return 0.0;
        const double hi = (z - x) / x;
        const double ratio = parent_sf(hi, params, parent) / sf_z;
        if (!(ratio < 1.0)) return 0.0;
        const double inner = special::reg_inc_beta(1.0 - ratio, ratio, static_cast<double>(j - k), k);
        double log_density = log_front + (j - 1.0) * std::log(sf_z) + std::log(parent_pdf(z, params, parent));
        if (M > j) log_density += (M - j) * std::log(parent_cdf(z, params, parent));
        return std::exp(log_density) * inner;
    };
    // SNR tails decay like exp(-c sqrt(z)), too slowly for an exponential map;
    // z = z0 + scale t / (1 - t) handles any super-polynomial decay.
    const double scale = std::max(1.0, z0);
    const auto mapped = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double one_minus = 1.0 - t;
        const double v = density(z0 + scale * t / one_minus);
        return v == 0.0 ? 0.0 : v * scale / (one_minus * one_minus);
    };
    return special::integrate_finite(mapped, 0.0, 1.0, detail::relative_spec(quadrature)).value;
}

}  // namespace

double gumbel_kth_cdf(double z, unsigned k) {
    if (k < 1) throw DomainError("gumbel_kth_cdf: k must be >= 1");
    if (std::isnan(z)) return z;
    if (z == kInf) return 1.0;
    if (z == -kInf) return 0.0;
    // log of sum_{j<k} e^{-j z} / j!, accumulated in log space.
    double log_sum = 0.0;  // j = 0 term
    for (unsigned j = 1; j < k; ++j) {
        const double term = -static_cast<double>(j) * z - special::log_gamma(j + 1.0);
        const double hi = std::max(log_sum, term);
        log_sum = hi + std::log1p(std::exp(std::min(log_sum, term) - hi));
    }
    const double neg_z = -z;
    if (neg_z > 700.0) return 0.0;
    return std::min(1.0, std::exp(-std::exp(neg_z) + log_sum));
}

NormalizingConstants normalizing_constants(Scheme scheme, const SystemParams& params, EhModel model) {
    params.validate();
    const double M = params.num_devices;
    if (params.num_devices < 2) throw DomainError("normalizing_constants: need M >= 2");
    switch (scheme) {
        case Scheme::EBS:
        case Scheme::IBS: return {std::log(M), 1.0};
        case Scheme::MMS: return {0.5 * std::log(M), 0.5};
        case Scheme::SBS: {
            const ParentModel parent = parent_of(model);
            const double eta = solve_survival(-std::log(M), params, parent);
            const double upper = solve_survival(-std::log(M) - 1.0, params, parent);
            return {eta, upper - eta};
        }
        case Scheme::RS: break;
    }
    throw DomainError("normalizing_constants: random selection has no extreme-value limit");
}

OutageEstimate outage_evt_sbs(double x, unsigned k, const SystemParams& params, EhModel model) {
    prelude(x, k, params, "outage_evt_sbs");
    // The Gumbel law has unbounded support, so without this it would report a
    // positive outage at x = 0.
    if (auto t = trivial(x)) return *t;
    const auto nc = normalizing_constants(Scheme::SBS, params, model);
    return make(gumbel_kth_cdf((x - nc.eta) / nc.xi, k));
}

OutageEstimate outage_evt_ebs(double x, unsigned k, const SystemParams& params, EhModel model,
                              const special::QuadratureSpec& quadrature) {
    prelude(x, k, params, "outage_evt_ebs");
    const double M = params.num_devices;
    const auto lc = detail::link_constants(x, params);
    const bool linear = model == EhModel::Linear;
    const double r = linear ? 0.0 : lc.r;
    const double beta = linear ? lc.beta_lin : lc.beta;
    // 1 - e^{-r} int g(y) e^{-beta/y} dy, rewritten so that no term cancels:
    // the limit density misses mass Q(k, M) on y < 0, where outage is certain.
    const auto fail = [r, beta](double y) { return -std::expm1(-r - beta / y); };
    if (auto t = trivial(x)) return *t;
    const double tail = special::reg_upper_inc_gamma(k, M);
    return make(tail + integrate_against_limit(fail, 0.0, kInf, k, M, 1.0, quadrature));
}

OutageEstimate outage_evt_ibs(double x, unsigned k, const SystemParams& params, EhModel model,
                              const special::QuadratureSpec& quadrature) {
    if (model == EhModel::Linear) return outage_evt_ebs(x, k, params, model, quadrature);
    prelude(x, k, params, "outage_evt_ibs");
    if (auto t = trivial(x)) return *t;
    const double M = params.num_devices;
    const auto lc = detail::link_constants(x, params);
    const double r = lc.r;
    const double beta = lc.beta;
    // Uplink gains in [0, r] always fail. Without this mass the approximation
    // would fall back to 0 as x grows.
    const auto always = [](double) { return 1.0; };
    const double below = integrate_against_limit(always, 0.0, r, k, M, 1.0, quadrature);
    const auto fail = [r, beta](double z) { return -std::expm1(-beta / (z - r)); };
    return make(below + integrate_against_limit(fail, r, kInf, k, M, 1.0, quadrature));
}

OutageEstimate outage_evt_mms(double x, unsigned k, const SystemParams& params, EhModel model,
                              const special::QuadratureSpec& quadrature) {
    prelude(x, k, params, "outage_evt_mms");
    if (auto t = trivial(x)) return *t;
    const unsigned M = params.num_devices;
    const auto lc = detail::link_constants(x, params);
    const bool linear = model == EhModel::Linear;
    const double r = linear ? 0.0 : lc.r;
    const double beta = linear ? lc.beta_lin : lc.beta;
    const double s = std::sqrt(r * r / 4.0 + beta) + r / 2.0;
    const auto down = [r, beta](double y) { return -std::expm1(-(r + beta / y - y)); };
    const auto up = [r, beta](double z) { return -std::expm1(-(beta / (z - r) - z)); };
    // Each link is the weaker one with probability 1/2; the limit density
    // passed in already carries that factor (rate 2).
    const double downlink_weaker = integrate_against_limit(down, 0.0, s, k, M, 2.0, quadrature);
    // Weaker link is the uplink: below r the device always fails.
    const double uplink_below_r = 0.5 * detail::kth_cdf(r, k, M, 2.0);
    const double uplink_weaker = integrate_against_limit(up, r, s, k, M, 2.0, quadrature);
    return make(downlink_weaker + uplink_below_r + uplink_weaker);
}

PairMarginals evt_pair_marginals(double x, const PairSpec& pair, const SystemParams& params,
                                 const special::QuadratureSpec& quadrature) {
    if (pair.scheme != PairScheme::SBS) {
        throw DomainError("outage_evt_pair: only SBS pairs have an order-statistic structure");
    }
    detail::check_threshold(x, "outage_evt_pair");
    if (!(x < 1.0)) throw DomainError("outage_evt_pair: the SINR threshold must satisfy x < 1");
    params.validate();
    pair.validate(params.num_devices);
    if (x == 0.0) return {0.0, 0.0};
    PairMarginals out;
    // The stronger device's test already confines the weaker one's SNR below
    // x / (1 - x), inside which the weaker device's test always holds, so this
    // marginal coincides with the exact joint region.
    out.stronger = outage_pair(x, pair, params, quadrature).value;
    out.weaker = 1.0 - weaker_failure_probability(x, pair, params, quadrature);
    return out;
}

OutageEstimate outage_evt_pair(double x, const PairSpec& pair, const SystemParams& params,
                               const special::QuadratureSpec& quadrature) {
    const auto m = evt_pair_marginals(x, pair, params, quadrature);
    return make(m.stronger * m.weaker);
}

OutageEstimate outage_evt(double x, const SchemeSpec& spec, const SystemParams& params,
                          const special::QuadratureSpec& quadrature) {
    switch (spec.scheme) {
        case Scheme::SBS: return outage_evt_sbs(x, spec.k, params, spec.model);
        case Scheme::EBS: return outage_evt_ebs(x, spec.k, params, spec.model, quadrature);
        case Scheme::IBS: return outage_evt_ibs(x, spec.k, params, spec.model, quadrature);
        case Scheme::MMS: return outage_evt_mms(x, spec.k, params, spec.model, quadrature);
        case Scheme::RS: break;
    }
    throw DomainError("outage_evt: random selection has no extreme-value form");
}

}  // namespace wpcn
