#include <cmath>
#include <string>

#include "detail.hpp"
#include "wpcn/analytic.hpp"
#include "wpcn/error.hpp"

namespace wpcn {
namespace {

// Both devices fail when X_a <= x (X_b + 1) and X_b <= x (X_a + 1). For x < 1
// the region is bounded: the weaker SNR z stays below x / (1 - x) and the
// stronger one y lies in [max(z, (z - x) / x), x (z + 1)].
double pair_outage(double x, const PairSpec& pair, const SystemParams& params, ParentModel parent,
                   const special::QuadratureSpec& quadrature) {
    const double z_max = x / (1.0 - x);
    const auto qs = detail::relative_spec(quadrature);
    const auto cdf = [&](double v) { return parent_cdf(v, params, parent); };
    const auto sf = [&](double v) { return parent_sf(v, params, parent); };
    const auto pdf = [&](double v) { return parent_pdf(v, params, parent); };
    // P(lo < X <= hi), differenced on whichever tail keeps its digits.
    const auto mass_between = [&](double lo, double hi) {
        const double c_lo = cdf(lo);
        if (c_lo < 0.5) return cdf(hi) - c_lo;
        return sf(lo) - sf(hi);
    };

    if (pair.scheme == PairScheme::RS) {
        // Two independent devices; the inner integral over y is a CDF difference.
        const auto outer = [&](double z) {
            const double lo = std::max(0.0, (z - x) / x);
            const double hi = x * (z + 1.0);
            const double mass = mass_between(lo, hi);
            return mass > 0.0 ? pdf(z) * mass : 0.0;
        };
        if (x < z_max) {
            return special::integrate_finite(outer, 0.0, x, qs).value +
                   special::integrate_finite(outer, x, z_max, qs).value;
        }
        return special::integrate_finite(outer, 0.0, z_max, qs).value;
    }

    // Ordered pair: z is the j-th best SNR and y the k-th best (y > z). Given
    // z, the k-th best among the j - 1 devices above z has the parent law
    // truncated to (z, inf), so the inner integral is an incomplete beta:
    //   P(y <= hi | z) = I_t(j - k, k),  t = 1 - sf(hi) / sf(z).
    const unsigned M = params.num_devices;
    const unsigned k = pair.k;
    const unsigned j = pair.j;
    const double log_front = std::log(static_cast<double>(j)) + special::log_binomial(M, j);
    const auto outer = [&](double z) {
        if (z <= 0.0) return 0.0;
        const double hi = x * (z + 1.0);
        const double sf_z = sf(z);
        if (sf_z <= 0.0) return 0.0;
        const double t = mass_between(z, hi) / sf_z;
        const double rest = t < 0.5 ? 1.0 - t : sf(hi) / sf_z;
        const double inner = special::reg_inc_beta(t, rest, static_cast<double>(j - k), k);
        if (inner <= 0.0) return 0.0;
        double log_density = log_front + (j - 1.0) * std::log(sf_z) + std::log(pdf(z));
        if (M > j) log_density += (M - j) * std::log(cdf(z));
        return std::exp(log_density) * inner;
    };
    return special::integrate_finite(outer, 0.0, z_max, qs).value;
}

OutageEstimate evaluate(double x, const PairSpec& pair, const SystemParams& params, ParentModel parent,
                        Method method, const special::QuadratureSpec& quadrature) {
    detail::check_threshold(x, "outage_pair");
    if (!(x < 1.0)) {
        throw DomainError("outage_pair: the SINR threshold must satisfy x < 1 (got " + std::to_string(x) + ")");
    }
    params.validate();
    pair.validate(params.num_devices);
    if (x == 0.0) return {0.0, method, std::nullopt};
    return {detail::clamp_probability(pair_outage(x, pair, params, parent, quadrature)), method, std::nullopt};
}

}  // namespace

OutageEstimate outage_pair(double x, const PairSpec& pair, const SystemParams& params,
                           const special::QuadratureSpec& quadrature) {
    return evaluate(x, pair, params, parent_of(pair.model), Method::Analytic, quadrature);
}

OutageEstimate outage_pair_high_snr(double x, const PairSpec& pair, const SystemParams& params,
                                    const special::QuadratureSpec& quadrature) {
    return evaluate(x, pair, params, ParentModel::HighSnr, Method::HighSnr, quadrature);
}

}  // namespace wpcn
