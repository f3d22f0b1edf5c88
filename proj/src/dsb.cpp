#include "logfsk/dsb.hpp"

#include <cmath>
#include <stdexcept>

#include "logfsk/waveform.hpp"

namespace logfsk {

DsbConfig make_dsb_config(Index n_samples, double a_bar_c, double sigma2) {
  DsbConfig cfg;
  cfg.n_samples = n_samples;
  cfg.m_max = static_cast<double>(n_samples) / 2.0;
  cfg.gain = std::sqrt(3.0) * a_bar_c / cfg.m_max;
  cfg.sigma2 = sigma2;
  cfg.carrier_index = n_samples / 4;
  return cfg;
}

VecX dsb_carrier(const DsbConfig& cfg) {
  return std::sqrt(static_cast<double>(cfg.n_samples)) *
         cosine_basis(cfg.carrier_index, cfg.n_samples);
}

VecX dsb_transmit(double m, const DsbConfig& cfg) {
  if (!(m >= 0.0 && m <= cfg.m_max)) {
    throw std::domain_error("measurement " + std::to_string(m) +
                            " outside [0, " + std::to_string(cfg.m_max) + "]");
  }
  return cfg.gain * m * dsb_carrier(cfg);
}

double dsb_estimate_sum(Eigen::Ref<const VecX> y, const DsbConfig& cfg) {
  if (y.size() != cfg.n_samples) {
    throw std::invalid_argument("dsb_estimate_sum: frame length mismatch");
  }
  const VecX c = dsb_carrier(cfg);
  return y.dot(c) / (cfg.gain * static_cast<double>(cfg.n_samples));
}

}  // namespace logfsk
