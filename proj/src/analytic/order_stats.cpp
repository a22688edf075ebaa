#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "detail.hpp"
#include "wpcn/error.hpp"

namespace wpcn::detail {

LinkConstants link_constants(double x, const SystemParams& params) {
    const auto& rt = params.rectenna;
    LinkConstants lc;
    lc.r = params.noise_variance * rt.c * params.t2() * x / (params.t1() * (rt.a * rt.c - rt.b));
    lc.beta = rt.c * lc.r / params.transmit_power;
    lc.beta_lin = params.noise_variance * params.t2() * x / (params.transmit_power * params.t1());
    return lc;
}

double clamp_probability(double value) {
    assert(value >= -1e-9 && value <= 1.0 + 1e-9 && "probability left [0, 1] by more than rounding");
    if (std::isnan(value)) return value;
    return std::clamp(value, 0.0, 1.0);
}

void check_threshold(double x, const char* where) {
    if (!(x >= 0.0) || std::isnan(x)) {
        throw DomainError(std::string(where) + ": threshold x must be non-negative");
    }
}

double log_kth_density(double y, unsigned k, unsigned M, double rate) {
    if (y <= 0.0) return k == M ? std::log(k * special::binomial(M, k) * rate) : -std::numeric_limits<double>::infinity();
    double out = std::log(static_cast<double>(k)) + special::log_binomial(M, k) + std::log(rate) - rate * k * y;
    if (M > k) out += (M - k) * std::log(-std::expm1(-rate * y));
    return out;
}

double kth_cdf(double t, unsigned k, unsigned M, double rate) {
    if (t <= 0.0) return 0.0;
    if (std::isinf(t)) return 1.0;
    const double psi = -std::expm1(-rate * t);
    return special::reg_inc_beta(psi, std::exp(-rate * t), M - k + 1.0, static_cast<double>(k));
}

special::QuadratureSpec relative_spec(const special::QuadratureSpec& spec) {
    special::QuadratureSpec out = spec;
    out.absolute_tolerance = std::numeric_limits<double>::min();
    return out;
}

double integrate_against_kth(const special::Integrand& g, double lo, double hi, unsigned k, unsigned M,
                             double rate, const special::QuadratureSpec& spec) {
    if (!(hi > lo)) return 0.0;
    const auto integrand = [&](double y) {
        const double gv = g(y);
        if (gv == 0.0) return 0.0;
        return gv * std::exp(log_kth_density(y, k, M, rate));
    };
    const auto qs = relative_spec(spec);
    // Split near the bulk of the density so the adaptive rule sees its peak.
    const double bulk = (std::log(static_cast<double>(M) / k) + 6.0) / rate;
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
    total += special::integrate_semi_infinite(integrand, split, qs, 1.0 / (rate * k)).value;
    return total;
}

void AlternatingSum::add(double term, double term_error) {
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term)) {
        compensation_ += (sum_ - t) + term;
    } else {
        compensation_ += (term - t) + sum_;
    }
    sum_ = t;
    abs_sum_ += std::fabs(term);
    term_error_ += std::fabs(term_error);
    ++count_;
}

double AlternatingSum::error_bound() const {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    // Each term carries a few rounding errors from its own evaluation.
    return 4.0 * eps * abs_sum_ + term_error_ + 2.0 * eps * std::fabs(value());
}

bool binomial_route_feasible(unsigned k, unsigned M) {
    // k C(M, k) C(M - k, m) must stay well below overflow.
    return special::log_binomial(M, k) + special::log_binomial(M - k, (M - k) / 2) + std::log(k + 1.0) < 600.0;
}

bool accept_binomial(double result, double error_bound, SumRoute route, const char* where) {
    const bool ok = std::isfinite(result) && error_bound <= kCancellationLimit * std::fabs(result);
    if (ok) return true;
    if (route == SumRoute::Binomial) {
        throw AccuracyError(std::string(where) + ": alternating binomial sum lost precision (error bound " +
                                std::to_string(error_bound) + " for value " + std::to_string(result) + ")",
                            result, error_bound);
    }
    return false;
}

}  // namespace wpcn::detail
