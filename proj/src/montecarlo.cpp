#include "wpcn/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "wpcn/error.hpp"
#include "wpcn/parallel.hpp"

namespace wpcn {
namespace {

constexpr std::uint64_t kBlockSize = 1u << 15;

// Circularly-symmetric complex Gaussian with the given variance.
struct Complex {
    double re;
    double im;
};

Complex complex_gaussian(double variance, TrialRng& rng) {
    const double radius = std::sqrt(variance * rng.exponential());
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    return {radius * std::cos(phase), radius * std::sin(phase)};
}

unsigned kth_largest(const std::vector<double>& values, unsigned k, std::vector<unsigned>& order) {
    order.resize(values.size());
    std::iota(order.begin(), order.end(), 0u);
    const auto before = [&values](unsigned a, unsigned b) {
        return values[a] > values[b] || (values[a] == values[b] && a < b);
    };
    std::nth_element(order.begin(), order.begin() + (k - 1), order.end(), before);
    return order[k - 1];
}

const std::vector<double>& ranked_g(const ChannelDraw& d) { return d.est_g ? *d.est_g : d.gains_g; }
const std::vector<double>& ranked_h(const ChannelDraw& d) { return d.est_h ? *d.est_h : d.gains_h; }

// Ranking statistic for every device under the given scheme.
void ranking_values(Scheme scheme, EhModel model, const ChannelDraw& draw, const SystemParams& params,
                    std::vector<double>& out) {
    const auto& g = ranked_g(draw);
    const auto& h = ranked_h(draw);
    const std::size_t M = g.size();
    out.resize(M);
    for (std::size_t i = 0; i < M; ++i) {
        switch (scheme) {
            case Scheme::RS: out[i] = draw.random_keys[i]; break;
            case Scheme::SBS: out[i] = snr(h[i], harvested_energy(g[i], params, model), params); break;
            case Scheme::EBS: out[i] = g[i]; break;  // harvested energy is increasing in |g|^2
            case Scheme::IBS: out[i] = h[i]; break;
            case Scheme::MMS: out[i] = std::min(g[i], h[i]); break;
        }
    }
}

}  // namespace

void draw_channels_into(ChannelDraw& draw, unsigned num_devices, double sigma_e2, TrialRng& rng) {
    draw.gains_g.resize(num_devices);
    draw.gains_h.resize(num_devices);
    draw.random_keys.resize(num_devices);
    if (sigma_e2 > 0.0) {
        if (!draw.est_g) draw.est_g.emplace();
        if (!draw.est_h) draw.est_h.emplace();
        draw.est_g->resize(num_devices);
        draw.est_h->resize(num_devices);
        const double known = 1.0 - sigma_e2;
        auto one_link = [&](double& true_gain, double& est_gain) {
            const Complex estimate = complex_gaussian(known, rng);
            const Complex error = complex_gaussian(sigma_e2, rng);
            const double re = estimate.re + error.re;
            const double im = estimate.im + error.im;
            est_gain = estimate.re * estimate.re + estimate.im * estimate.im;
            true_gain = re * re + im * im;
        };
        for (unsigned i = 0; i < num_devices; ++i) {
            one_link(draw.gains_g[i], (*draw.est_g)[i]);
            one_link(draw.gains_h[i], (*draw.est_h)[i]);
        }
    } else {
        draw.est_g.reset();
        draw.est_h.reset();
        for (unsigned i = 0; i < num_devices; ++i) {
            draw.gains_g[i] = rng.exponential();
            draw.gains_h[i] = rng.exponential();
        }
    }
    for (unsigned i = 0; i < num_devices; ++i) draw.random_keys[i] = rng.uniform();
}

ChannelDraw draw_channels(unsigned num_devices, double sigma_e2, TrialRng& rng) {
    if (!(sigma_e2 >= 0.0 && sigma_e2 < 1.0)) throw DomainError("draw_channels: sigma_E^2 must lie in [0, 1)");
    ChannelDraw draw;
    draw_channels_into(draw, num_devices, sigma_e2, rng);
    return draw;
}

double device_snr(unsigned i, const ChannelDraw& draw, const SystemParams& params, EhModel model) {
    return snr(draw.gains_h[i], harvested_energy(draw.gains_g[i], params, model), params);
}

unsigned select_device(const SchemeSpec& spec, const ChannelDraw& draw, const SystemParams& params) {
    const unsigned M = static_cast<unsigned>(draw.gains_g.size());
    spec.validate(M);
    std::vector<double> values;
    std::vector<unsigned> order;
    ranking_values(spec.scheme, spec.model, draw, params, values);
    return kth_largest(values, spec.k, order);
}

std::pair<unsigned, unsigned> select_pair(const PairSpec& pair, const ChannelDraw& draw, const SystemParams& params) {
    const unsigned M = static_cast<unsigned>(draw.gains_g.size());
    pair.validate(M);
    std::vector<double> values;
    std::vector<unsigned> order;
    ranking_values(pair.scheme == PairScheme::RS ? Scheme::RS : Scheme::SBS, pair.model, draw, params, values);
    const unsigned first = kth_largest(values, pair.k, order);
    const unsigned second = kth_largest(values, pair.j, order);
    return {first, second};
}

void TrialConfig::validate() const {
    if (num_trials < 1) throw DomainError("Monte Carlo needs at least one trial");
    if (!(estimation_error_var >= 0.0 && estimation_error_var < 1.0)) {
        throw DomainError("estimation error variance must lie in [0, 1)");
    }
    params.validate();
    std::visit([&](const auto& s) { s.validate(params.num_devices); }, spec);
}

SimulationCounts simulate_counts(const TrialConfig& config) {
    config.validate();
    const SystemParams& params = config.params;
    const unsigned M = params.num_devices;
    const double x = threshold_x(params);
    const std::uint64_t blocks = (config.num_trials + kBlockSize - 1) / kBlockSize;
    std::vector<std::uint64_t> outages(blocks, 0);

    parallel_for(blocks, resolve_workers(config.workers), [&](std::size_t block) {
        const std::uint64_t begin = block * kBlockSize;
        const std::uint64_t end = std::min(config.num_trials, begin + kBlockSize);
        ChannelDraw draw;
        std::vector<double> values;
        std::vector<unsigned> order;
        std::uint64_t count = 0;
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            TrialRng rng(config.base_seed, trial);
            draw_channels_into(draw, M, config.estimation_error_var, rng);
            if (const auto* single = std::get_if<SchemeSpec>(&config.spec)) {
                ranking_values(single->scheme, single->model, draw, params, values);
                const unsigned i = kth_largest(values, single->k, order);
                if (device_snr(i, draw, params, single->model) <= x) ++count;
            } else {
                const auto& pair = std::get<PairSpec>(config.spec);
                ranking_values(pair.scheme == PairScheme::RS ? Scheme::RS : Scheme::SBS, pair.model, draw, params,
                               values);
                const unsigned a = kth_largest(values, pair.k, order);
                const unsigned b = kth_largest(values, pair.j, order);
                const double xa = device_snr(a, draw, params, pair.model);
                const double xb = device_snr(b, draw, params, pair.model);
                // Single-user detection, interference measured against a unit noise floor.
                if (xa <= x * (xb + 1.0) && xb <= x * (xa + 1.0)) ++count;
            }
        }
        outages[block] = count;
    });
    SimulationCounts out;
    out.trials = config.num_trials;
    out.outages = std::accumulate(outages.begin(), outages.end(), std::uint64_t{0});
    return out;
}

OutageEstimate simulate_outage(const TrialConfig& config) {
    const auto counts = simulate_counts(config);
    const double n = static_cast<double>(counts.trials);
    const double p = static_cast<double>(counts.outages) / n;
    return {p, Method::MonteCarlo, std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace wpcn
