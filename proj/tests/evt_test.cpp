#include <doctest.h>

#include <cmath>
#include <vector>

#include "wpcn/analytic.hpp"
#include "wpcn/error.hpp"
#include "wpcn/evt.hpp"

using namespace wpcn;

namespace {

SystemParams at(double dbm, unsigned M) {
    auto p = SystemParams::defaults();
    p.transmit_power = dbm_to_watts(dbm);
    p.num_devices = M;
    return p;
}

std::vector<double> log_grid() {
    std::vector<double> g;
    for (int i = 0; i < 30; ++i) g.push_back(std::pow(10.0, -1.0 + 5.0 * i / 29.0));
    return g;
}

double sup_gap(Scheme s, unsigned k, const SystemParams& p) {
    double gap = 0.0;
    for (double x : log_grid()) {
        const SchemeSpec spec{s, k};
        gap = std::max(gap, std::fabs(outage_evt(x, spec, p).value - outage(x, spec, p, Method::Analytic).value));
    }
    return gap;
}

}  // namespace

TEST_CASE("Gumbel k-th maximum CDF") {
    CHECK(gumbel_kth_cdf(0.0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(gumbel_kth_cdf(0.0, 2) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-15));
    CHECK(gumbel_kth_cdf(50.0, 3) == doctest::Approx(1.0));
    CHECK(gumbel_kth_cdf(-50.0, 3) == 0.0);
    CHECK(gumbel_kth_cdf(-std::numeric_limits<double>::infinity(), 1) == 0.0);
    CHECK(gumbel_kth_cdf(std::numeric_limits<double>::infinity(), 4) == 1.0);
    double fact = 1.0;
    for (unsigned k = 2; k <= 8; ++k) {
        fact *= (k - 1);
        for (double z : {-3.0, -0.5, 0.0, 1.2, 6.0}) {
            const double step = std::exp(-std::exp(-z)) * std::exp(-(k - 1.0) * z) / fact;
            CHECK(std::fabs(gumbel_kth_cdf(z, k) - gumbel_kth_cdf(z, k - 1) - step) < 1e-12);
        }
    }
    // Deep left tail stays finite and ordered in log space.
    CHECK(gumbel_kth_cdf(-6.0, 2) > 0.0);
    CHECK(gumbel_kth_cdf(-6.0, 2) > gumbel_kth_cdf(-6.0, 1));
}

TEST_CASE("normalizing constants") {
    auto p = at(-10.0, 100);
    auto e = normalizing_constants(Scheme::EBS, p);
    CHECK(e.eta == doctest::Approx(std::log(100.0)).epsilon(1e-15));
    CHECK(e.xi == 1.0);
    e = normalizing_constants(Scheme::IBS, p);
    CHECK(e.eta == doctest::Approx(4.60517).epsilon(1e-6));
    const auto m = normalizing_constants(Scheme::MMS, p);
    CHECK(m.eta == doctest::Approx(2.302585).epsilon(1e-6));
    CHECK(m.xi == 0.5);

    for (auto model : {EhModel::NonLinear, EhModel::Linear}) {
        for (unsigned M : {10u, 50u, 200u}) {
            p = at(-10.0, M);
            const auto s = normalizing_constants(Scheme::SBS, p, model);
            const auto pm = parent_of(model);
            INFO("M=" << M << " " << to_string(model));
            CHECK(std::fabs(parent_sf(s.eta, p, pm) - 1.0 / M) < 1e-12);
            CHECK(std::fabs(parent_sf(s.eta + s.xi, p, pm) - 1.0 / (std::exp(1.0) * M)) < 1e-10);
            CHECK(s.xi > 0.0);
        }
    }
    p = at(-10.0, 50);
    CHECK(std::fabs(parent_cdf(normalizing_constants(Scheme::SBS, p).eta, p, ParentModel::NonLinear) - 0.98) < 1e-12);
    CHECK_THROWS_AS(normalizing_constants(Scheme::RS, p), DomainError);
}

TEST_CASE("SNR-ranked approximation at the location parameter") {
    const auto p = at(-10.0, 50);
    const auto nc = normalizing_constants(Scheme::SBS, p);
    CHECK(outage_evt_sbs(nc.eta, 1, p).value == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("approximations stay close to the exact evaluators at M = 50") {
    const auto p = at(-10.0, 50);
    for (double x : {1.0, 3.0, 30.0, 300.0}) {
        INFO("x=" << x);
        CHECK(std::fabs(outage_evt_ebs(x, 2, p).value - outage(x, {Scheme::EBS, 2}, p, Method::Analytic).value) < 0.02);
        CHECK(std::fabs(outage_evt_ibs(x, 1, p).value - outage(x, {Scheme::IBS, 1}, p, Method::Analytic).value) < 0.02);
        CHECK(std::fabs(outage_evt_mms(x, 1, p).value - outage(x, {Scheme::MMS, 1}, p, Method::Analytic).value) < 0.02);
    }
}

TEST_CASE("zero threshold and range") {
    for (unsigned M : {20u, 100u}) {
        const auto p = at(-10.0, M);
        for (auto s : {Scheme::SBS, Scheme::EBS, Scheme::IBS, Scheme::MMS}) {
            CHECK(outage_evt(0.0, {s, 1}, p).value == 0.0);
            for (unsigned k : {1u, 2u, 3u}) {
                double prev = 0.0;
                for (double x : log_grid()) {
                    const double v = outage_evt(x, {s, k}, p).value;
                    INFO(to_string(s) << " M=" << M << " k=" << k << " x=" << x);
                    CHECK(v >= 0.0);
                    CHECK(v <= 1.0);
                    CHECK(v >= prev - 1e-12);
                    prev = v;
                }
            }
        }
    }
    CHECK_THROWS_AS(outage_evt(1.0, {Scheme::RS, 1}, at(-10.0, 10)), DomainError);
    CHECK_THROWS_AS(outage_evt(1.0, {Scheme::SBS, 1}, at(-10.0, 1)), DomainError);
    CHECK_THROWS_AS(outage_evt(1.0, {Scheme::SBS, 11}, at(-10.0, 10)), DomainError);
}

TEST_CASE("large-M gap shrinks with M") {
    for (auto s : {Scheme::SBS, Scheme::EBS, Scheme::IBS, Scheme::MMS}) {
        for (unsigned k : {1u, 2u}) {
            double prev = 1.0;
            for (unsigned M : {10u, 50u, 200u}) {
                const double gap = sup_gap(s, k, at(-40.0, M));
                INFO(to_string(s) << " k=" << k << " M=" << M << " gap=" << gap);
                CHECK(gap <= prev);
                prev = gap;
            }
        }
    }
}

TEST_CASE("pair approximation") {
    auto p = at(-40.0, 10);
    p.rate_threshold_q = db_to_linear(-4.0);
    const PairSpec spec{PairScheme::SBS, 1, 3};
    CHECK(outage_evt_pair(0.0, spec, p).value == 0.0);
    double prev = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double v = outage_evt_pair(0.1 * i, spec, p).value;
        CHECK(v >= prev);
        CHECK(v <= 1.0);
        prev = v;
    }
    const auto m = evt_pair_marginals(threshold_x(p), spec, p);
    CHECK(outage_evt_pair(threshold_x(p), spec, p).value == doctest::Approx(m.stronger * m.weaker).epsilon(1e-15));
    CHECK_THROWS_AS(outage_evt_pair(0.5, {PairScheme::RS, 1, 3}, p), DomainError);

    // Against the exact joint evaluator (whose own Monte Carlo check lives in
    // the acceptance suite): the absolute gap shrinks from M = 10 to M = 30.
    double prev_gap = 1.0;
    for (unsigned M : {10u, 30u}) {
        p.num_devices = M;
        const double x = threshold_x(p);
        const double gap = std::fabs(outage_evt_pair(x, spec, p).value - outage_pair(x, spec, p).value);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}
