#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "wpcn/error.hpp"
#include "wpcn/experiments.hpp"

namespace wpcn::experiments {
namespace {

constexpr double kEdge = 1e-4;
constexpr int kScanPoints = 50;

// Non-increasing up to the minimum, non-decreasing after it, up to rounding.
bool looks_unimodal(const std::vector<double>& values, std::size_t argmin) {
    const auto slack = [](double a, double b) { return 1e-12 * std::max(std::fabs(a), std::fabs(b)); };
    for (std::size_t i = 1; i <= argmin; ++i) {
        if (values[i] > values[i - 1] + slack(values[i], values[i - 1])) return false;
    }
    for (std::size_t i = argmin + 1; i < values.size(); ++i) {
        if (values[i] < values[i - 1] - slack(values[i], values[i - 1])) return false;
    }
    return true;
}

}  // namespace

T1Optimum find_optimal_t1(const SchemeSpec& spec, const SystemParams& params, double search_tolerance) {
    if (!(search_tolerance > 0.0)) throw DomainError("find_optimal_t1: tolerance must be positive");
    const auto objective = [&](double t1) {
        SystemParams p = params;
        p.harvest_fraction = t1;
        return outage(threshold_x(p), spec, p, Method::Analytic).value;
    };

    std::vector<double> grid(kScanPoints);
    std::vector<double> values(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i) {
        grid[i] = kEdge + (1.0 - 2.0 * kEdge) * i / (kScanPoints - 1);
        values[i] = objective(grid[i]);
    }
    const auto argmin = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());

    T1Optimum out;
    if (!looks_unimodal(values, argmin)) {
        out.t_star = grid[argmin];
        out.outage = values[argmin];
        out.unimodal = false;
        out.warning = "outage is not unimodal in t1 on the coarse scan; returning the scan minimum";
        return out;
    }

    // Golden-section search inside the scan cell around the minimum.
    double lo = grid[argmin == 0 ? 0 : argmin - 1];
    double hi = grid[std::min<std::size_t>(argmin + 1, kScanPoints - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = objective(a);
    double fb = objective(b);
    while (hi - lo > search_tolerance) {
        if (fa <= fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = objective(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = objective(b);
        }
    }
    out.t_star = 0.5 * (lo + hi);
    out.outage = objective(out.t_star);
    return out;
}

}  // namespace wpcn::experiments
