#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "wpcn/analytic.hpp"
#include "wpcn/error.hpp"

using namespace wpcn;

namespace {

SystemParams pair_setup(unsigned M) {
    auto p = SystemParams::defaults();
    p.transmit_power = dbm_to_watts(-40.0);
    p.rate_threshold_q = db_to_linear(-4.0);
    p.num_devices = M;
    return p;
}

}  // namespace

TEST_CASE("ranked pair against nested quadrature of the joint density") {
    for (unsigned M : {4u, 10u}) {
        const auto p = pair_setup(M);
        const double x = threshold_x(p);
        for (auto [k, j] : {std::pair{1u, 2u}, {1u, 3u}, {2u, 4u}, {2u, M}}) {
            for (auto m : {EhModel::NonLinear, EhModel::Linear}) {
                const PairSpec spec{PairScheme::SBS, k, j, m};
                const double got = outage_pair(x, spec, p).value;
                const double want = oracle::pair_sbs(x, spec, p);
                INFO("M=" << M << " k=" << k << " j=" << j << " " << to_string(m));
                // The nested oracle integrates through the log singularity of the
                // density at zero and is only good to about seven digits.
                CHECK(std::fabs(got - want) <= 1e-6 * want + 1e-14);
            }
        }
    }
}

TEST_CASE("random pair against nested quadrature") {
    const auto p = pair_setup(10);
    for (double x : {0.1, 0.5, threshold_x(p), 0.9}) {
        for (auto m : {EhModel::NonLinear, EhModel::Linear}) {
            const double got = outage_pair(x, {PairScheme::RS, 1, 2, m}, p).value;
            INFO("x=" << x << " " << to_string(m));
            CHECK(std::fabs(got - oracle::pair_rs(x, m, p)) <= 1e-6 * got + 1e-14);
        }
    }
}

TEST_CASE("reference pair values") {
    const auto p = pair_setup(10);
    const double x = threshold_x(p);
    CHECK(outage_pair(x, {PairScheme::SBS, 1, 3}, p).value == doctest::Approx(2.350e-4).epsilon(1e-3));
    CHECK(outage_pair(x, {PairScheme::SBS, 2, 5}, p).value == doctest::Approx(1.1205e-3).epsilon(1e-3));
}

TEST_CASE("pair outage is a CDF on [0, 1)") {
    const auto p = pair_setup(10);
    for (auto s : {PairScheme::RS, PairScheme::SBS}) {
        CHECK(outage_pair(0.0, {s, 1, 3}, p).value == 0.0);
        double prev = 0.0;
        for (int i = 1; i <= 9; ++i) {
            const double v = outage_pair(0.1 * i, {s, 1, 3}, p).value;
            CHECK(v >= prev);
            CHECK(v <= 1.0);
            prev = v;
        }
        CHECK_THROWS_AS(outage_pair(1.0, {s, 1, 3}, p), DomainError);
        CHECK_THROWS_AS(outage_pair(-0.1, {s, 1, 3}, p), DomainError);
    }
    CHECK_THROWS_AS(outage_pair(0.5, {PairScheme::SBS, 3, 3}, p), DomainError);
    CHECK_THROWS_AS(outage_pair(0.5, {PairScheme::SBS, 1, 11}, p), DomainError);
}

TEST_CASE("pair high-SNR variant uses the saturated parent") {
    auto p = pair_setup(10);
    const double x = threshold_x(p);
    const PairSpec spec{PairScheme::SBS, 1, 3};
    const double floor = outage_pair_high_snr(x, spec, p).value;
    CHECK(floor > 0.0);
    // The floor does not depend on the transmit power; the exact value falls
    // onto it from above as the power grows.
    double prev_ratio = std::numeric_limits<double>::infinity();
    for (double dbm : {20.0, 40.0, 60.0, 80.0}) {
        p.transmit_power = dbm_to_watts(dbm);
        CHECK(outage_pair_high_snr(x, spec, p).value == doctest::Approx(floor).epsilon(1e-14));
        const double ratio = outage_pair(x, spec, p).value / floor;
        INFO("dbm=" << dbm << " ratio=" << ratio);
        CHECK(ratio >= 1.0);
        CHECK(ratio < prev_ratio);
        prev_ratio = ratio;
    }
    CHECK(prev_ratio < 1.05);
}
