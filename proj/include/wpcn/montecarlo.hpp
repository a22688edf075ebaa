#pragma once

// Monte Carlo ground truth: draw Rayleigh channels, apply each scheme's
// selection rule literally, count outages.

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "wpcn/analytic.hpp"
#include "wpcn/model.hpp"
#include "wpcn/rng.hpp"

namespace wpcn {

/// One slot's channel power gains for M devices.
struct ChannelDraw {
    std::vector<double> gains_g;  // downlink |g_i|^2
    std::vector<double> gains_h;  // uplink |h_i|^2
    // Estimated gains |g^_i|^2, |h^_i|^2; present only with estimation error.
    std::optional<std::vector<double>> est_g;
    std::optional<std::vector<double>> est_h;
    // I.i.d. uniform keys; random selection ranks devices by these so that
    // distinct k on one draw select distinct devices.
    std::vector<double> random_keys;
};

/// Draws unit-mean exponential gains. With sigma_e2 > 0 each coefficient is
/// estimate + error, CN(0, 1 - sigma_e2) + CN(0, sigma_e2), on both links.
ChannelDraw draw_channels(unsigned num_devices, double sigma_e2, TrialRng& rng);

/// Same, reusing the vectors of `draw`.
void draw_channels_into(ChannelDraw& draw, unsigned num_devices, double sigma_e2, TrialRng& rng);

/// Index of the device holding the k-th largest ranking statistic. Rankings
/// use estimated gains when present; ties go to the lowest index.
unsigned select_device(const SchemeSpec& spec, const ChannelDraw& draw, const SystemParams& params);

/// Indices of the k-th and j-th ranked devices.
std::pair<unsigned, unsigned> select_pair(const PairSpec& pair, const ChannelDraw& draw, const SystemParams& params);

/// True SNR of device i for the given EH model.
double device_snr(unsigned i, const ChannelDraw& draw, const SystemParams& params, EhModel model);

struct TrialConfig {
    std::uint64_t num_trials = 1'000'000;
    std::uint64_t base_seed = 1;
    double estimation_error_var = 0.0;  // sigma_E^2 in [0, 1)
    SystemParams params{};
    std::variant<SchemeSpec, PairSpec> spec = SchemeSpec{};
    unsigned workers = 0;  // 0: automatic; does not affect results

    void validate() const;
};

struct SimulationCounts {
    std::uint64_t trials = 0;
    std::uint64_t outages = 0;
};

/// Raw outage count. Trials are grouped in fixed blocks whose counts are
/// summed as integers, so the result is independent of the worker count.
SimulationCounts simulate_counts(const TrialConfig& config);

/// Outage frequency with binomial standard error sqrt(p (1 - p) / N).
OutageEstimate simulate_outage(const TrialConfig& config);

}  // namespace wpcn
