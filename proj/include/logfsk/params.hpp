#pragma once

#include <string>
#include <vector>

#include "logfsk/types.hpp"

namespace logfsk {

/// Modulation constants shared by every transmitter and the receiver.
///
/// The warped waveform is x[n] = A_c * log(B_c * cos_m[n] + alpha) with
/// A_c = a_bar_c / sqrt(log_power), so the transmit power is a_bar_c^2
/// whenever log_power matches the mean square of the log term. All users
/// of one AirComp session must share the same instance: the receiver
/// divides by the common A_c before exponentiating, and any per-user
/// deviation turns the clean product into fractional powers.
struct LogFskParams {
  Index n_samples = 256;     // N, samples per symbol; alphabet size M = N
  double alpha = 0.0;        // regularization inside the logarithm
  double b_c = 0.0;          // inner amplitude B_c
  double a_bar_c = 1.0;      // transmit amplitude; power = a_bar_c^2
  bool subtract_mean = false;
  double log_power = 1.0;    // P, mean-square of the log term used for A_c

  double amplitude_gain() const;  // A_c = a_bar_c / sqrt(log_power)
};

struct ParamViolation {
  enum class Kind {
    TooFewSamples,
    AlphaNotPositive,
    AlphaBelowLogBound,    // alpha must exceed b_c * sqrt(2/N)
    BcNotPositive,
    BcBelowDetectionBound, // b_c < sqrt(2N): sum-frequency amplitude vanishes
    TransmitAmplitudeNotPositive,
    LogPowerNotPositive,
  };
  Kind kind;
  std::string message;
};

/// Collects every violated invariant; empty result means the parameters are
/// usable for modulation and detection.
std::vector<ParamViolation> validate(const LogFskParams& params);

/// Throws std::domain_error listing all violations, if any.
void validate_or_throw(const LogFskParams& params);

/// Mean square of log(b_c * cos_m[n] + alpha) for one message index.
double log_term_power(Index m, const LogFskParams& params);

/// log_term_power averaged over the measurement range m = 0..floor(N/2).
double average_log_power(Index n_samples, double b_c, double alpha);

/// Largest log_term_power over the full alphabet m = 0..N-1.
double worst_case_log_power(Index n_samples, double b_c, double alpha);

/// Paper-style design point: B_c = sqrt(2N), alpha = B_c*sqrt(2/N) + delta,
/// log_power averaged over the measurement range.
LogFskParams design_params(Index n_samples, double delta = 0.1,
                           double a_bar_c = 1.0);

}  // namespace logfsk
