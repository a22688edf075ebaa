#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "wpcn/analytic.hpp"
#include "wpcn/error.hpp"
#include "wpcn/montecarlo.hpp"
#include "wpcn/parallel.hpp"
#include "wpcn/rng.hpp"

using namespace wpcn;

namespace {

// Index of the k-th largest score by full sort; ties keep the lower index first.
unsigned kth_by_sort(const std::vector<double>& score, unsigned k) {
    std::vector<unsigned> idx(score.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(), [&](unsigned a, unsigned b) { return score[a] > score[b]; });
    return idx[k - 1];
}

std::vector<double> ranking(Scheme s, const ChannelDraw& d, const SystemParams& p) {
    const auto& g = d.est_g ? *d.est_g : d.gains_g;
    const auto& h = d.est_h ? *d.est_h : d.gains_h;
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        switch (s) {
            case Scheme::RS: out[i] = d.random_keys[i]; break;
            case Scheme::SBS: out[i] = snr(h[i], harvested_energy(g[i], p, EhModel::NonLinear), p); break;
            case Scheme::EBS: out[i] = harvested_energy(g[i], p, EhModel::NonLinear); break;
            case Scheme::IBS: out[i] = h[i]; break;
            case Scheme::MMS: out[i] = std::min(g[i], h[i]); break;
        }
    }
    return out;
}

double simulate(Scheme s, unsigned k, const SystemParams& p, std::uint64_t n, double sigma_e2 = 0.0,
                unsigned workers = 0, EhModel model = EhModel::NonLinear) {
    TrialConfig c;
    c.params = p;
    c.spec = SchemeSpec{s, k, model};
    c.num_trials = n;
    c.estimation_error_var = sigma_e2;
    c.workers = workers;
    return simulate_outage(c).value;
}

}  // namespace

TEST_CASE("uniform generator stays inside (0, 1] and is reproducible") {
    TrialRng a(7, 3), b(7, 3), c(7, 4);
    bool differs = false;
    for (int i = 0; i < 10000; ++i) {
        const double u = a.uniform();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
        CHECK(u == b.uniform());
        differs |= (u != c.uniform());
    }
    CHECK(differs);
}

TEST_CASE("channel draws") {
    const unsigned n = 200000;
    double sum_g = 0.0, sum_est = 0.0;
    for (unsigned t = 0; t < n; ++t) {
        TrialRng rng(1, t);
        auto d = draw_channels(5, 0.0, rng);
        CHECK_FALSE(d.est_g.has_value());
        for (double g : d.gains_g) sum_g += g;
        TrialRng rng2(1, t);
        auto e = draw_channels(5, 0.3, rng2);
        REQUIRE(e.est_g.has_value());
        for (double g : *e.est_g) sum_est += g;
    }
    // 1e6 exponential samples each: standard error 1e-3.
    CHECK(std::fabs(sum_g / (5.0 * n) - 1.0) < 0.004);
    CHECK(std::fabs(sum_est / (5.0 * n) - 0.7) < 0.004);

    TrialRng r1(9, 11), r2(9, 11);
    const auto d1 = draw_channels(8, 0.2, r1), d2 = draw_channels(8, 0.2, r2);
    CHECK(d1.gains_g == d2.gains_g);
    CHECK(d1.gains_h == d2.gains_h);
    CHECK(*d1.est_h == *d2.est_h);
    CHECK(d1.random_keys == d2.random_keys);
}

TEST_CASE("selection matches a brute-force sort") {
    const auto p = SystemParams::defaults();
    for (auto s : {Scheme::RS, Scheme::SBS, Scheme::EBS, Scheme::IBS, Scheme::MMS}) {
        for (double se : {0.0, 0.3}) {
            for (unsigned t = 0; t < 10000; ++t) {
                TrialRng rng(42, t);
                const auto d = draw_channels(5, se, rng);
                const auto score = ranking(s, d, p);
                for (unsigned k : {1u, 2u, 5u}) {
                    const unsigned got = select_device({s, k}, d, p);
                    if (got != kth_by_sort(score, k)) {
                        FAIL_CHECK(to_string(s) << " k=" << k << " trial " << t);
                    }
                }
                CHECK(select_device({s, 1}, d, p) != select_device({s, 2}, d, p));
            }
        }
    }
}

TEST_CASE("selection on constructed inputs") {
    const auto p = SystemParams::defaults();
    ChannelDraw one{{0.3}, {2.0}, {}, {}, {0.5}};
    for (auto s : {Scheme::RS, Scheme::SBS, Scheme::EBS, Scheme::IBS, Scheme::MMS}) CHECK(select_device({s, 1}, one, p) == 0u);

    ChannelDraw d{{1.0, 1.0, 5.0, 1.0}, {1.0, 2.0, 3.0, 0.5}, {}, {}, {0.1, 0.2, 0.3, 0.4}};
    CHECK(select_device({Scheme::SBS, 1}, d, p) == 2u);
    CHECK(select_device({Scheme::IBS, 2}, d, p) == 1u);
    CHECK(select_device({Scheme::RS, 1}, d, p) == 3u);
    // Equal energies: the lower index wins.
    CHECK(select_device({Scheme::EBS, 2}, d, p) == 0u);

    const auto [a, b] = select_pair({PairScheme::SBS, 1, 3}, d, p);
    CHECK(a == 2u);
    CHECK(b == 0u);
}

TEST_CASE("Monte Carlo agrees with the analytic evaluators") {
    const auto p = SystemParams::defaults();
    const std::uint64_t n = 400000;
    for (auto s : {Scheme::RS, Scheme::EBS, Scheme::IBS}) {
        for (auto m : {EhModel::NonLinear, EhModel::Linear}) {
            TrialConfig c;
            c.params = p;
            c.spec = SchemeSpec{s, 2, m};
            c.num_trials = n;
            const auto mc = simulate_outage(c);
            const double exact = outage(3.0, {s, 2, m}, p, Method::Analytic).value;
            INFO(to_string(s) << " " << to_string(m) << " mc=" << mc.value << " exact=" << exact);
            REQUIRE(mc.std_error.has_value());
            CHECK(std::fabs(mc.value - exact) <= 3.0 * *mc.std_error + 1e-12);
        }
    }
}

TEST_CASE("zero threshold never fails") {
    auto p = SystemParams::defaults();
    p.rate_threshold_q = 0.0;
    CHECK(simulate(Scheme::SBS, 1, p, 20000) == 0.0);
}

TEST_CASE("results do not depend on the worker count") {
    const auto p = SystemParams::defaults();
    for (auto s : {Scheme::RS, Scheme::MMS}) {
        const double one = simulate(s, 2, p, 150000, 0.1, 1);
        CHECK(one == simulate(s, 2, p, 150000, 0.1, 3));
        CHECK(one == simulate(s, 2, p, 150000, 0.1, 8));
    }
    TrialConfig c;
    c.params = p;
    c.spec = PairSpec{PairScheme::SBS, 1, 3};
    c.params.num_devices = 6;
    c.num_trials = 70000;
    c.workers = 1;
    const auto a = simulate_counts(c);
    c.workers = 5;
    const auto b = simulate_counts(c);
    CHECK(a.outages == b.outages);
    CHECK(a.trials == 70000u);
}

TEST_CASE("estimation error degrades selection") {
    const auto p = SystemParams::defaults();
    for (auto s : {Scheme::SBS, Scheme::EBS, Scheme::IBS, Scheme::MMS}) {
        CHECK(simulate(s, 1, p, 200000, 0.3) > simulate(s, 1, p, 200000, 0.0));
    }
}

TEST_CASE("trial configuration validation") {
    TrialConfig c;
    c.num_trials = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.estimation_error_var = 1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.spec = SchemeSpec{Scheme::SBS, 9};
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.spec = PairSpec{PairScheme::RS, 2, 2};
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("worker resolution") {
    CHECK(resolve_workers(3) >= 1u);
    CHECK(resolve_workers(3) <= 3u);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) { if (i == 7) throw DomainError("boom"); }), DomainError);
}
