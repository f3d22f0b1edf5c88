#include "logfsk/waveform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace logfsk {

VecX cosine_basis(Index m, Index n_samples) {
  if (n_samples < 2) {
    throw std::domain_error("n_samples must be at least 2");
  }
  if (m < 0 || m >= n_samples) {
    throw std::domain_error("message index " + std::to_string(m) +
                            " outside [0, " + std::to_string(n_samples - 1) + "]");
  }
  const double scale = std::sqrt(2.0 / static_cast<double>(n_samples));
  const double rate = std::numbers::pi * static_cast<double>(m) /
                      (2.0 * static_cast<double>(n_samples));
  VecX out(n_samples);
  for (Index n = 0; n < n_samples; ++n) {
    out[n] = scale * std::cos(rate * static_cast<double>(2 * n + 1));
  }
  return out;
}

VecX modulate(Index m, const LogFskParams& params) {
  validate_or_throw(params);
  const VecX basis = cosine_basis(m, params.n_samples);
  VecX arg = (params.b_c * basis).array() + params.alpha;
  if (!(arg.minCoeff() > 0.0)) {
    throw std::domain_error("logarithm argument not positive for m = " +
                            std::to_string(m));
  }
  VecX frame = params.amplitude_gain() * arg.array().log();
  if (params.subtract_mean) {
    frame.array() -= frame.mean();
  }
  return frame;
}

}  // namespace logfsk
