#include "logfsk/receiver.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "logfsk/channel.hpp"
#include "logfsk/theory.hpp"
#include "logfsk/waveform.hpp"

namespace logfsk {

VecX exp_postprocess(Eigen::Ref<const VecX> y, const LogFskParams& params) {
  const double a_c = params.amplitude_gain();
  if (!(a_c > 0.0)) throw std::domain_error("amplitude gain must be positive");
  const double peak = y.maxCoeff() / a_c;
  if (peak > 700.0) {
    throw std::range_error(
        "exponential postprocessing saturates: max y/A_c = " +
        std::to_string(peak) +
        "; the noise level is far outside the modem's operating range");
  }
  return (y / a_c).array().exp();
}

DemodOutcome demodulate(Eigen::Ref<const VecX> y, const ReceiverConfig& cfg,
                        const AnalysisOperator& op) {
  if (y.size() != op.n_samples || cfg.params.n_samples != op.n_samples) {
    throw std::invalid_argument("demodulate: dimension mismatch");
  }
  if (cfg.k_users < 1) throw std::domain_error("k_users must be at least 1");
  if (!(cfg.threshold_fraction > 0.0 && cfg.threshold_fraction <= 1.0)) {
    throw std::domain_error("threshold_fraction must lie in (0, 1]");
  }

  VecX r = exp_postprocess(y, cfg.params);
  if (cfg.dc_removal) {
    r.array() -= std::pow(cfg.params.alpha, cfg.k_users);
  }
  const VecX d = analyze(op, r);
  const double tau = cfg.threshold_fraction *
                     a_sigma(cfg.k_users, cfg.params.b_c, op.n_samples);
  const Detection det = detect_max_frequency(d, tau);

  DemodOutcome out;
  out.sum_estimate = det.index;
  out.threshold = tau;
  out.candidates = det.candidates;
  out.peak_magnitude = det.peak_magnitude;
  out.below_threshold_fallback = det.below_threshold;
  return out;
}

DestinationSnrEstimate measure_destination_snr(
    const std::vector<Index>& messages, const ReceiverConfig& cfg,
    const AnalysisOperator& op, double sigma2, std::uint64_t seed,
    std::uint64_t trials) {
  if (trials < 1000) {
    throw std::invalid_argument("measure_destination_snr needs >= 1000 trials");
  }
  if (messages.empty()) throw std::invalid_argument("messages must be non-empty");

  const Index n = op.n_samples;
  const Index sum = std::accumulate(messages.begin(), messages.end(), Index{0});
  if (sum < 0 || sum >= n) {
    throw std::domain_error("message sum outside [0, N-1]");
  }

  std::vector<VecX> frames;
  frames.reserve(messages.size());
  for (Index m : messages) frames.push_back(modulate(m, cfg.params));
  const VecX clean = superpose(frames);
  const AwgnChannel channel{sigma2, seed};
  // Only the sum bin matters, so project with that analysis row instead of
  // running the full transform per trial.
  const VecX row = op.analysis.row(sum).transpose();
  const double dc = std::pow(cfg.params.alpha, cfg.k_users) * row.sum();

  double acc = 0.0, acc2 = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const VecX y = add_awgn(clean, channel, t);
    const VecX r = exp_postprocess(y, cfg.params);
    const double d_sum = row.dot(r) - (cfg.dc_removal ? dc : 0.0);
    acc += d_sum;
    acc2 += d_sum * d_sum;
  }

  DestinationSnrEstimate est;
  est.trials = trials;
  est.a_sigma = a_sigma(cfg.k_users, cfg.params.b_c, n);
  est.mean = acc / static_cast<double>(trials);
  est.variance = acc2 / static_cast<double>(trials) - est.mean * est.mean;
  const double bias = est.mean - est.a_sigma;
  const double denom = est.variance + bias * bias;
  // Zero noise leaves only rounding residue in the denominator.
  est.snr_linear = sigma2 == 0.0 || denom == 0.0
                       ? std::numeric_limits<double>::infinity()
                       : est.a_sigma * est.a_sigma / denom;
  return est;
}

}  // namespace logfsk
