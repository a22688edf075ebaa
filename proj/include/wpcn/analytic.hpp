#pragma once

// Exact finite-M outage probabilities for k-th best device selection, and
// the P_t -> infinity floors caused by rectifier saturation.
//
// Every evaluator takes the SNR threshold x explicitly (see threshold_x) and
// reads P_t, sigma_n^2, t1, the rectenna constants and M from SystemParams.
// Q inside params is ignored here.

#include <optional>
#include <string>
#include <string_view>

#include "wpcn/model.hpp"
#include "wpcn/special.hpp"

namespace wpcn {

enum class Scheme { RS, SBS, EBS, IBS, MMS };
enum class PairScheme { RS, SBS };
enum class Method { Analytic, HighSnr, Evt, MonteCarlo };

std::string to_string(Scheme scheme);
std::string to_string(PairScheme scheme);
std::string to_string(Method method);
Scheme parse_scheme(std::string_view text);
PairScheme parse_pair_scheme(std::string_view text);
Method parse_method(std::string_view text);

struct SchemeSpec {
    Scheme scheme = Scheme::SBS;
    unsigned k = 1;
    EhModel model = EhModel::NonLinear;

    void validate(unsigned num_devices) const;
};

/// Joint selection of the k-th and j-th best devices, k < j (k is the stronger one).
struct PairSpec {
    PairScheme scheme = PairScheme::SBS;
    unsigned k = 1;
    unsigned j = 2;
    EhModel model = EhModel::NonLinear;

    void validate(unsigned num_devices) const;
};

struct OutageEstimate {
    double value = 0.0;
    Method method = Method::Analytic;
    std::optional<double> std_error;  // Monte Carlo only
};

/// How the alternating binomial sums are evaluated.
///   Binomial: the closed sum only; throws AccuracyError if cancellation
///             destroys more than 1e-8 of the result.
///   Integral: direct quadrature over the order-statistic density.
///   Auto:     Binomial, falling back to Integral when the monitor trips.
enum class SumRoute { Auto, Binomial, Integral };

struct EvalOptions {
    SumRoute route = SumRoute::Auto;
    special::QuadratureSpec quadrature{};
};

/// Distribution of one device's end-to-end SNR.
enum class ParentModel { NonLinear, Linear, HighSnr };

ParentModel parent_of(EhModel model);
double parent_cdf(double x, const SystemParams& params, ParentModel model);
/// 1 - CDF, computed without cancellation.
double parent_sf(double x, const SystemParams& params, ParentModel model);
double parent_pdf(double x, const SystemParams& params, ParentModel model);

/// r = sigma_n^2 c t2 x / (t1 (a c - b)): the uplink gain below which no
/// amount of harvested energy avoids outage.
double saturation_gain(double x, const SystemParams& params);

/// Phi(x, delta) = int_r^inf exp(-delta z - c r / (P_t (z - r))) dz in closed form.
double ibs_phi(double x, double delta, const SystemParams& params);

OutageEstimate outage_rs(double x, const SystemParams& params, EhModel model);
OutageEstimate outage_rs_high_snr(double x, const SystemParams& params);

OutageEstimate outage_sbs(double x, const SchemeSpec& spec, const SystemParams& params);
/// SBS with the saturated parent 1 - exp(-r).
OutageEstimate outage_sbs_high_snr(double x, const SchemeSpec& spec, const SystemParams& params);

OutageEstimate outage_ebs(double x, const SchemeSpec& spec, const SystemParams& params,
                          const EvalOptions& options = {});
OutageEstimate outage_ebs_high_snr(double x, const SystemParams& params);

OutageEstimate outage_ibs(double x, const SchemeSpec& spec, const SystemParams& params,
                          const EvalOptions& options = {});
OutageEstimate outage_ibs_high_snr(double x, const SchemeSpec& spec, const SystemParams& params,
                                   const EvalOptions& options = {});

OutageEstimate outage_mms(double x, const SchemeSpec& spec, const SystemParams& params,
                          const EvalOptions& options = {});
OutageEstimate outage_mms_high_snr(double x, const SchemeSpec& spec, const SystemParams& params,
                                   const EvalOptions& options = {});

/// Probability that both selected devices fail the SINR test X_a / (X_b + 1) <= x
/// under single-user detection (interference normalized to the noise floor).
/// Requires 0 <= x < 1.
OutageEstimate outage_pair(double x, const PairSpec& pair, const SystemParams& params,
                           const special::QuadratureSpec& quadrature = {});
OutageEstimate outage_pair_high_snr(double x, const PairSpec& pair, const SystemParams& params,
                                    const special::QuadratureSpec& quadrature = {});

/// Dispatch on spec.scheme for Method::Analytic or Method::HighSnr. The linear
/// model has no floor, so HighSnr with EhModel::Linear returns 0.
OutageEstimate outage(double x, const SchemeSpec& spec, const SystemParams& params, Method method,
                      const EvalOptions& options = {});

}  // namespace wpcn
