#pragma once

// Large-M approximations from extreme value theory. The k-th largest of M
// i.i.d. variables in the Gumbel domain is approximated through the limiting
// law of (X - eta) / xi.
//
// M is read from params.num_devices; all evaluators require M >= 2.

#include "wpcn/analytic.hpp"
#include "wpcn/model.hpp"
#include "wpcn/special.hpp"

namespace wpcn {

struct NormalizingConstants {
    double eta = 0.0;  // location: 1 - F(eta) = 1/M
    double xi = 1.0;   // scale:    1 - F(eta + xi) = 1/(e M)
};

/// Limiting CDF of the standardized k-th maximum:
/// exp(-exp(-z)) * sum_{j<k} exp(-j z) / j!.
double gumbel_kth_cdf(double z, unsigned k);

/// Constants of the ranking variable of each scheme. EBS/IBS rank unit-mean
/// exponentials (log M, 1); MMS ranks the minimum of two, an Exp(2) variable
/// (log M / 2, 1/2); SBS ranks the end-to-end SNR and is solved numerically.
NormalizingConstants normalizing_constants(Scheme scheme, const SystemParams& params,
                                           EhModel model = EhModel::NonLinear);

OutageEstimate outage_evt_sbs(double x, unsigned k, const SystemParams& params,
                              EhModel model = EhModel::NonLinear);
OutageEstimate outage_evt_ebs(double x, unsigned k, const SystemParams& params,
                              EhModel model = EhModel::NonLinear,
                              const special::QuadratureSpec& quadrature = {});
OutageEstimate outage_evt_ibs(double x, unsigned k, const SystemParams& params,
                              EhModel model = EhModel::NonLinear,
                              const special::QuadratureSpec& quadrature = {});
OutageEstimate outage_evt_mms(double x, unsigned k, const SystemParams& params,
                              EhModel model = EhModel::NonLinear,
                              const special::QuadratureSpec& quadrature = {});

/// Pair outage treating the two SINR tests as independent events, the
/// large-M behaviour of well-separated order statistics. SBS pairs only.
OutageEstimate outage_evt_pair(double x, const PairSpec& pair, const SystemParams& params,
                               const special::QuadratureSpec& quadrature = {});

/// The two marginal probabilities whose product outage_evt_pair returns.
struct PairMarginals {
    double stronger = 0.0;  // P(X_k / (X_j + 1) <= x)
    double weaker = 0.0;    // P(X_j / (X_k + 1) <= x)
};
PairMarginals evt_pair_marginals(double x, const PairSpec& pair, const SystemParams& params,
                                 const special::QuadratureSpec& quadrature = {});

/// Dispatch on spec.scheme (RS has no EVT form and is rejected).
OutageEstimate outage_evt(double x, const SchemeSpec& spec, const SystemParams& params,
                          const special::QuadratureSpec& quadrature = {});

}  // namespace wpcn
