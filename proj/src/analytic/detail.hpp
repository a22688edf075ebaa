#pragma once

// Helpers shared by the analytic and EVT evaluators. Not installed.

#include <cmath>
#include <limits>

#include "wpcn/analytic.hpp"
#include "wpcn/special.hpp"

namespace wpcn::detail {

/// Link-level constants for a given threshold x.
struct LinkConstants {
    double r = 0.0;       // saturation gain, sigma^2 c t2 x / (t1 (a c - b))
    double beta = 0.0;    // c r / P_t
    double beta_lin = 0.0;  // sigma^2 t2 x / (P_t t1), linear-model counterpart
};

LinkConstants link_constants(double x, const SystemParams& params);

/// u K1(u), with the u -> 0 limit of 1.
inline double x_k1(double u) { return u > 0.0 ? u * special::bessel_k1(u) : 1.0; }

/// Clamp to [0, 1]; asserts in debug builds that the raw value was within 1e-9.
double clamp_probability(double value);

void check_threshold(double x, const char* where);

/// log of the density of the k-th largest of M i.i.d. Exp(rate) variables.
double log_kth_density(double y, unsigned k, unsigned M, double rate);

/// P(k-th largest of M i.i.d. Exp(rate) <= t).
double kth_cdf(double t, unsigned k, unsigned M, double rate);

/// int_lo^hi g(y) f_k(y) dy with f_k the density above; hi may be +inf.
/// Uses a tiny absolute tolerance so small results keep relative accuracy.
double integrate_against_kth(const special::Integrand& g, double lo, double hi, unsigned k, unsigned M,
                             double rate, const special::QuadratureSpec& spec);

special::QuadratureSpec relative_spec(const special::QuadratureSpec& spec);

/// Neumaier-compensated sum of an alternating series with a running bound on
/// the rounding and per-term error it may contain.
class AlternatingSum {
public:
    /// term_error: absolute error already present in term (e.g. from quadrature).
    void add(double term, double term_error = 0.0);
    double value() const { return sum_ + compensation_; }
    double abs_sum() const { return abs_sum_; }
    /// Bound on the absolute error of value().
    double error_bound() const;

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
    double abs_sum_ = 0.0;
    double term_error_ = 0.0;
    unsigned count_ = 0;
};

/// Largest relative error tolerated from the binomial route before falling back.
inline constexpr double kCancellationLimit = 1e-8;

/// True when the binomial coefficients involved stay comfortably inside double range.
bool binomial_route_feasible(unsigned k, unsigned M);

/// Throws or returns false depending on route, given the achieved error bound.
bool accept_binomial(double result, double error_bound, SumRoute route, const char* where);

}  // namespace wpcn::detail
