#pragma once

// Special functions and adaptive quadrature used by the outage evaluators.
// Everything here is a pure function of its arguments.

#include <functional>

namespace wpcn::special {

/// Modified Bessel function of the second kind, order 1. Requires x > 0;
/// underflows to 0 for x beyond ~745.
double bessel_k1(double x);

/// Modified Bessel function of the second kind, order 0. Requires x > 0.
double bessel_k0(double x);

/// 1 - x K1(x) for x >= 0, accurate when the result is small (x -> 0).
double one_minus_x_k1(double x);

/// Regularized incomplete beta I_psi(p, q).
double reg_inc_beta(double psi, double p, double q);

/// Same as above with the complement 1 - psi supplied by the caller. Use
/// this when psi is close to 1 and its complement is known more accurately
/// than the subtraction would give.
double reg_inc_beta(double psi, double one_minus_psi, double p, double q);

/// Lower incomplete gamma gamma(p, q) = int_0^q t^{p-1} e^{-t} dt (not normalized).
double lower_inc_gamma(double p, double q);

/// Regularized lower incomplete gamma P(p, q) = gamma(p, q) / Gamma(p).
double reg_lower_inc_gamma(double p, double q);

/// Regularized upper incomplete gamma Q(p, q) = 1 - P(p, q), computed directly.
double reg_upper_inc_gamma(double p, double q);

/// log |Gamma(x)|, thread-safe.
double log_gamma(double x);

/// log C(n, k) for 0 <= k <= n.
double log_binomial(unsigned n, unsigned k);

/// C(n, k) as a double; exact while it fits in 53 bits.
double binomial(unsigned n, unsigned k);

struct QuadratureSpec {
    double relative_tolerance = 1e-10;
    double absolute_tolerance = 1e-12;
    int max_subdivisions = 2000;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int subdivisions = 0;
    int evaluations = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [a, b]. Throws
/// AccuracyError (carrying the best estimate) when the tolerance is not met
/// within spec.max_subdivisions.
QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureSpec& spec = {});

/// Integral over [lower, inf) through the map z = lower - scale * log(u),
/// u in (0, 1]. The integrand should decay at least like exp(-z / scale).
QuadratureResult integrate_semi_infinite(const Integrand& f, double lower,
                                         const QuadratureSpec& spec = {},
                                         double scale = 1.0);

}  // namespace wpcn::special
