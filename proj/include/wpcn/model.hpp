#pragma once

// Physical-layer primitives: parameters, units, energy harvester and SNR.
// All quantities are SI; dBm/dB only appear through the conversion helpers.

#include <string>
#include <string_view>

namespace wpcn {

enum class EhModel { NonLinear, Linear };

std::string to_string(EhModel model);
/// Accepts "nonlinear" / "linear" (case-insensitive).
EhModel parse_eh_model(std::string_view text);

/// Curve-fit constants of the rectifier: E = t1 ((a P g + b) / (P g + c) - b / c).
struct RectennaParams {
    double a = 2.463;
    double b = 1.635;
    double c = 0.826;

    void validate() const;
    /// a - b / c, the saturated output per unit harvesting time.
    double saturation() const { return a - b / c; }
};

struct SystemParams {
    RectennaParams rectenna;
    double transmit_power = 1e-4;   // W (-10 dBm)
    double noise_variance = 1e-8;   // W (-50 dBm)
    double harvest_fraction = 0.5;  // t1; slot duration is 1
    double rate_threshold_q = 1.0;  // linear Q (0 dB)
    unsigned num_devices = 5;

    static SystemParams defaults() { return {}; }

    double t1() const { return harvest_fraction; }
    double t2() const { return 1.0 - harvest_fraction; }
    void validate() const;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);
double linear_to_db(double value);

/// Energy harvested in one slot from downlink power gain |g|^2.
double harvested_energy(double gain_g, const SystemParams& params, EhModel model);

/// Uplink SNR |h|^2 E / (t2 sigma_n^2).
double snr(double gain_h, double energy, const SystemParams& params);

/// SNR threshold x = 2^{Q / t2} - 1.
double threshold_x(const SystemParams& params);

}  // namespace wpcn
