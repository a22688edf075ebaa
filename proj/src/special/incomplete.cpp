#include <cmath>
#include <limits>
#include <string>

#include "wpcn/error.hpp"
#include "wpcn/special.hpp"

namespace wpcn::special {
namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 100000;

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw AccuracyError("reg_inc_beta: continued fraction did not converge", h, std::numeric_limits<double>::quiet_NaN());
}

void check_beta_args(double psi, double p, double q) {
    if (!(psi >= 0.0 && psi <= 1.0) || !(p > 0.0) || !(q > 0.0)) {
        throw DomainError("reg_inc_beta: require 0 <= psi <= 1, p > 0, q > 0 (psi=" + std::to_string(psi) +
                          ", p=" + std::to_string(p) + ", q=" + std::to_string(q) + ")");
    }
}

// Series for P(p, q), valid for q < p + 1. Returns the series sum; the caller
// multiplies by exp(-q + p log q).
double gamma_series(double p, double q) {
    double ap = p;
    double del = 1.0 / p;
    double sum = del;
    for (int n = 0; n < kMaxIterations; ++n) {
        ap += 1.0;
        del *= q / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) return sum;
    }
    throw AccuracyError("lower_inc_gamma: series did not converge", sum, std::numeric_limits<double>::quiet_NaN());
}

// Continued fraction for Gamma(p, q), valid for q >= p + 1. Returns the
// fraction; the caller multiplies by exp(-q + p log q).
double gamma_continued_fraction(double p, double q) {
    double b = q + 1.0 - p;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -i * (i - p);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw AccuracyError("upper_inc_gamma: continued fraction did not converge", h, std::numeric_limits<double>::quiet_NaN());
}

void check_gamma_args(double p, double q, const char* name) {
    if (!(p > 0.0) || !(q >= 0.0)) {
        throw DomainError(std::string(name) + ": require p > 0 and q >= 0 (p=" + std::to_string(p) +
                          ", q=" + std::to_string(q) + ")");
    }
}

}  // namespace

double log_gamma(double x) {
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double log_binomial(unsigned n, unsigned k) {
    if (k > n) throw DomainError("log_binomial: k > n");
    return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

double binomial(unsigned n, unsigned k) {
    if (k > n) throw DomainError("binomial: k > n");
    if (k > n - k) k = n - k;
    double result = 1.0;
    for (unsigned i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result < 9.0e15 ? std::round(result) : result;
}

double reg_inc_beta(double psi, double p, double q) {
    return reg_inc_beta(psi, 1.0 - psi, p, q);
}

double reg_inc_beta(double psi, double one_minus_psi, double p, double q) {
    check_beta_args(psi, p, q);
    if (!(one_minus_psi >= 0.0 && one_minus_psi <= 1.0)) {
        throw DomainError("reg_inc_beta: complement outside [0, 1]");
    }
    if (psi == 0.0) return 0.0;
    if (one_minus_psi == 0.0) return 1.0;
    const double log_front = log_gamma(p + q) - log_gamma(p) - log_gamma(q) + p * std::log(psi) +
                             q * std::log(one_minus_psi);
    const double front = std::exp(log_front);
    if (psi < (p + 1.0) / (p + q + 2.0)) {
        return front * beta_continued_fraction(p, q, psi) / p;
    }
    return 1.0 - front * beta_continued_fraction(q, p, one_minus_psi) / q;
}

double lower_inc_gamma(double p, double q) {
    check_gamma_args(p, q, "lower_inc_gamma");
    if (q == 0.0) return 0.0;
    if (q < p + 1.0) {
        return gamma_series(p, q) * std::exp(-q + p * std::log(q));
    }
    return std::exp(log_gamma(p)) - gamma_continued_fraction(p, q) * std::exp(-q + p * std::log(q));
}

double reg_lower_inc_gamma(double p, double q) {
    check_gamma_args(p, q, "reg_lower_inc_gamma");
    if (q == 0.0) return 0.0;
    if (q < p + 1.0) {
        return gamma_series(p, q) * std::exp(-q + p * std::log(q) - log_gamma(p));
    }
    return 1.0 - gamma_continued_fraction(p, q) * std::exp(-q + p * std::log(q) - log_gamma(p));
}

double reg_upper_inc_gamma(double p, double q) {
    check_gamma_args(p, q, "reg_upper_inc_gamma");
    if (q == 0.0) return 1.0;
    if (q < p + 1.0) {
        return 1.0 - gamma_series(p, q) * std::exp(-q + p * std::log(q) - log_gamma(p));
    }
    return gamma_continued_fraction(p, q) * std::exp(-q + p * std::log(q) - log_gamma(p));
}

}  // namespace wpcn::special
