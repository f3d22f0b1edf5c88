#pragma once

#include "logfsk/types.hpp"

namespace logfsk {

/// Linear-AirComp baseline: measurements ride on the amplitude of a shared
/// carrier. The gain is calibrated so the average transmit power under
/// m ~ Uniform[0, m_max] equals a_bar_c^2, matching the Log-FSK budget.
struct DsbConfig {
  Index n_samples = 256;
  double m_max = 128.0;      // measurement range upper bound (N/2)
  double gain = 0.0;         // amplitude per measurement unit
  double sigma2 = 0.0;       // channel noise power
  Index carrier_index = 64;  // basis index of the shared carrier
};

/// gain = sqrt(3) * a_bar_c / m_max gives E[(gain*m)^2] = a_bar_c^2.
DsbConfig make_dsb_config(Index n_samples, double a_bar_c, double sigma2 = 0.0);

/// Unit-power carrier: sqrt(N) times the basis cosine at carrier_index.
VecX dsb_carrier(const DsbConfig& cfg);

/// s[n] = gain * m * carrier[n]. Throws when m falls outside [0, m_max].
VecX dsb_transmit(double m, const DsbConfig& cfg);

/// Matched-filter estimate of the aggregate: correlate against the carrier
/// over the frame and divide by the gain. Unbiased; the N-sample correlation
/// suppresses the noise by the processing gain.
double dsb_estimate_sum(Eigen::Ref<const VecX> y, const DsbConfig& cfg);

}  // namespace logfsk
