#include "wpcn/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wpcn/error.hpp"

namespace wpcn::special {
namespace {

constexpr double kSeriesCutover = 2.0;
constexpr double kEps = 1e-17;
constexpr int kMaxIterations = 10000;

void require_positive(double x, const char* name) {
    if (!(x > 0.0)) {
        throw DomainError(std::string(name) + ": argument must be positive, got " + std::to_string(x));
    }
}

// Power series around 0, valid (and used) for 0 < x <= 2.
//   I0 = sum t^k / (k!)^2,             t = x^2 / 4
//   I1 = (x/2) sum t^k / (k! (k+1)!)
//   K0 = -(log(x/2) + gamma) I0 + sum H_k t^k / (k!)^2
//   K1 = 1/x + log(x/2) I1 - (x/4) sum (psi(k+1) + psi(k+2)) t^k / (k! (k+1)!)
struct SmallArgument {
    double k0;
    double k1;
    double one_minus_xk1;
};

SmallArgument small_argument_series(double x) {
    const double t = 0.25 * x * x;
    const double log_half_x = std::log(0.5 * x);
    const double euler = std::numbers::egamma;

    double i0 = 0.0, i1_sum = 0.0, k0_sum = 0.0, k1_sum = 0.0, omk1_sum = 0.0;
    double term0 = 1.0;   // t^k / (k!)^2
    double term1 = 1.0;   // t^k / (k! (k+1)!)
    double harmonic = 0.0;  // H_k
    double psi_k1 = -euler;        // psi(k+1)
    double psi_k2 = 1.0 - euler;   // psi(k+2)
    for (int k = 0; k < 500; ++k) {
        if (k > 0) {
            term0 *= t / (double(k) * double(k));
            term1 *= t / (double(k) * double(k + 1));
            harmonic += 1.0 / k;
            psi_k1 += 1.0 / k;
            psi_k2 += 1.0 / (k + 1);
        }
        i0 += term0;
        i1_sum += term1;
        k0_sum += harmonic * term0;
        const double psi_sum = psi_k1 + psi_k2;
        k1_sum += psi_sum * term1;
        omk1_sum += (psi_sum - 2.0 * log_half_x) * term1;
        if (term0 < kEps * i0 && term1 < kEps * i1_sum) break;
    }
    const double i1 = 0.5 * x * i1_sum;
    SmallArgument out;
    out.k0 = -(log_half_x + euler) * i0 + k0_sum;
    out.k1 = 1.0 / x + log_half_x * i1 - 0.25 * x * k1_sum;
    out.one_minus_xk1 = t * omk1_sum;
    return out;
}

// Steed's continued fraction (Temme's CF2) for K0 and K1, x >= 2.
struct LargeArgument {
    double k0;
    double k1;
};

LargeArgument steed_cf2(double x) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= kMaxIterations; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < kEps) break;
    }
    h *= a1;
    LargeArgument out;
    out.k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    out.k1 = out.k0 * (x + 0.5 - h) / x;
    return out;
}

}  // namespace

double bessel_k1(double x) {
    require_positive(x, "bessel_k1");
    if (x <= kSeriesCutover) return small_argument_series(x).k1;
    return steed_cf2(x).k1;
}

double bessel_k0(double x) {
    require_positive(x, "bessel_k0");
    if (x <= kSeriesCutover) return small_argument_series(x).k0;
    return steed_cf2(x).k0;
}

double one_minus_x_k1(double x) {
    if (x < 0.0 || std::isnan(x)) throw DomainError("one_minus_x_k1: argument must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x <= kSeriesCutover) return small_argument_series(x).one_minus_xk1;
    return 1.0 - x * steed_cf2(x).k1;
}

}  // namespace wpcn::special
