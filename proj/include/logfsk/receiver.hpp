#pragma once

#include <cstdint>
#include <vector>

#include "logfsk/params.hpp"
#include "logfsk/transform.hpp"
#include "logfsk/types.hpp"

namespace logfsk {

/// Receiver side of one AirComp session. The parameter set must be the one
/// the transmitters used; the user count fixes the expected peak amplitude
/// and the constant term removed before analysis.
struct ReceiverConfig {
  LogFskParams params;
  int k_users = 1;
  double threshold_fraction = 0.5;  // tau = fraction * A_sigma(K, B_c, N)
  bool dc_removal = true;           // subtract alpha^K before analysis
};

struct DemodOutcome {
  Index sum_estimate = 0;           // detected aggregate, in [0, N-1]
  double threshold = 0.0;
  std::vector<Index> candidates;    // bins at or above the threshold
  double peak_magnitude = 0.0;
  bool below_threshold_fallback = false;
};

/// r[n] = exp(y[n] / A_c). Throws a saturation error when an exponent would
/// overflow double range (y/A_c > 700), naming the offending magnitude.
VecX exp_postprocess(Eigen::Ref<const VecX> y, const LogFskParams& params);

/// Full pipeline: exponential postprocess, optional constant removal,
/// analysis, thresholded maximum-frequency pick. Noiseless reception of any
/// valid message tuple with sum <= N-1 and B_c >= sqrt(2N) detects the sum
/// exactly.
DemodOutcome demodulate(Eigen::Ref<const VecX> y, const ReceiverConfig& cfg,
                        const AnalysisOperator& op);

struct DestinationSnrEstimate {
  double snr_linear = 0.0;  // A^2 / (Var + (Mean - A)^2); +inf when noiseless
  double mean = 0.0;        // empirical mean of the sum bin
  double variance = 0.0;    // empirical variance of the sum bin
  double a_sigma = 0.0;
  std::uint64_t trials = 0;
};

/// Monte-Carlo estimate of the destination SNR for a fixed message tuple:
/// repeatedly transmits, adds noise from (seed, trial) streams, and tracks
/// the sum-frequency coefficient. Requires at least 1000 trials.
DestinationSnrEstimate measure_destination_snr(
    const std::vector<Index>& messages, const ReceiverConfig& cfg,
    const AnalysisOperator& op, double sigma2, std::uint64_t seed,
    std::uint64_t trials);

}  // namespace logfsk
