#include "logfsk/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "logfsk/waveform.hpp"

namespace logfsk {

LogNormalStats lognormal_stats(double sigma2, double a_c) {
  if (!(a_c > 0.0)) throw std::domain_error("a_c must be positive");
  if (sigma2 < 0.0) throw std::domain_error("sigma2 must be non-negative");
  const double s = sigma2 / (a_c * a_c);
  LogNormalStats st;
  st.mu_z = std::exp(s / 2.0);
  st.sigma2_z = std::exp(s) * (std::exp(s) - 1.0);
  return st;
}

double a_sigma(int k_users, double b_c, Index n_samples) {
  if (k_users < 1) throw std::domain_error("k_users must be at least 1");
  return std::pow(b_c, k_users) * std::pow(0.5, k_users - 1) *
         std::pow(2.0 / static_cast<double>(n_samples), (k_users - 1) / 2.0);
}

double product_power(const LogFskParams& params,
                     const std::vector<Index>& messages) {
  if (messages.empty()) throw std::invalid_argument("messages must be non-empty");
  VecX prod = VecX::Ones(params.n_samples);
  for (Index m : messages) {
    prod.array() *=
        (params.b_c * cosine_basis(m, params.n_samples)).array() + params.alpha;
  }
  return prod.array().square().mean();
}

double product_power_reference(const LogFskParams& params, int k_users) {
  if (k_users < 1) throw std::domain_error("k_users must be at least 1");
  const Index n = params.n_samples;
  const Index m_max = (n - 1) / k_users;
  // E[ prod_k f_{m_k}^2 ] factorizes per sample for iid messages.
  VecX mean_sq = VecX::Zero(n);
  for (Index m = 0; m <= m_max; ++m) {
    mean_sq.array() +=
        ((params.b_c * cosine_basis(m, n)).array() + params.alpha).square();
  }
  mean_sq /= static_cast<double>(m_max + 1);
  return mean_sq.array().pow(k_users).mean();
}

double snr_sigma(double a_sig, double p_p, const LogNormalStats& stats) {
  const double denom =
      p_p * stats.sigma2_z + a_sig * a_sig * (stats.mu_z - 1.0) * (stats.mu_z - 1.0);
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return a_sig * a_sig / denom;
}

double snr_sigma_from_snr_r(double snr_r, double p_p, double p, Index n_samples) {
  if (!(snr_r > 0.0)) throw std::domain_error("snr_r must be positive");
  const double x = p / snr_r;
  const double inv =
      (p_p / (2.0 * static_cast<double>(n_samples))) * std::exp(x) *
          (std::exp(x) - 1.0) +
      (std::exp(x / 2.0) - 1.0) * (std::exp(x / 2.0) - 1.0);
  if (inv == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / inv;
}

double high_snr_approx_db(double snr_r_db, double p_p_db, double p_db,
                          Index n_samples) {
  return to_db(2.0 * static_cast<double>(n_samples)) + snr_r_db - p_p_db - p_db;
}

double gaussian_q(double x) {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double gaussian_q_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("gaussian_q_inv needs p in (0, 1)");
  }
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gaussian_q(mid) > p ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  // Newton polish against the Gaussian density.
  for (int i = 0; i < 4; ++i) {
    const double f = gaussian_q(x) - p;
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    if (pdf == 0.0) break;
    x += f / pdf;
  }
  return x;
}

double error_prob(Index n_samples, double snr_sigma_linear,
                  QInterpretation interp) {
  if (snr_sigma_linear < 0.0) throw std::domain_error("snr_sigma must be >= 0");
  const double arg = interp == QInterpretation::q_of_sqrt
                         ? std::sqrt(snr_sigma_linear)
                         : snr_sigma_linear;
  const double pe = static_cast<double>(n_samples - 1) * gaussian_q(arg);
  return std::clamp(pe, 0.0, 1.0);
}

ThresholdPoint threshold_snr_r(Index n_samples, int k_users, double gamma_th,
                               QInterpretation interp, double p_p, double p) {
  if (!(gamma_th > 0.0 && gamma_th < 1.0)) {
    throw std::domain_error("gamma_th must lie in (0, 1)");
  }
  const double q_target = gamma_th / static_cast<double>(n_samples - 1);
  const double q_arg = gaussian_q_inv(q_target);
  const double snr_sigma_target =
      interp == QInterpretation::q_of_sqrt ? q_arg * q_arg : q_arg;

  const double a_sig = a_sigma(k_users, std::sqrt(2.0 * n_samples), n_samples);
  auto destination_snr = [&](double snr_r_lin) {
    if (k_users == 2) return snr_sigma_from_snr_r(snr_r_lin, p_p, p, n_samples);
    return snr_sigma(a_sig, p_p, lognormal_stats(p / snr_r_lin, 1.0));
  };

  double lo = -20.0, hi = 80.0;
  if (destination_snr(from_db(hi)) < snr_sigma_target ||
      destination_snr(from_db(lo)) > snr_sigma_target) {
    throw std::runtime_error(
        "threshold_snr_r: no root in [-20, 80] dB for target SNR_sigma = " +
        std::to_string(to_db(snr_sigma_target)) + " dB");
  }
  while (hi - lo > 0.01) {
    const double mid = 0.5 * (lo + hi);
    (destination_snr(from_db(mid)) < snr_sigma_target ? lo : hi) = mid;
  }
  ThresholdPoint out;
  out.snr_sigma_db = to_db(snr_sigma_target);
  out.snr_r_db = 0.5 * (lo + hi);
  return out;
}

double mse(Index n_samples, double p_e, Index true_sum) {
  if (!(p_e >= 0.0 && p_e <= 1.0)) throw std::domain_error("p_e must be in [0,1]");
  if (p_e == 0.0) return 0.0;
  double acc = 0.0;
  for (Index m = 0; m < n_samples; ++m) {
    if (m == true_sum) continue;
    const double d = static_cast<double>(m - true_sum);
    acc += d * d;
  }
  return p_e * acc / static_cast<double>(n_samples - 1);
}

double mse_literal(Index n_samples, double p_e, Index true_sum) {
  if (!(p_e >= 0.0 && p_e <= 1.0)) throw std::domain_error("p_e must be in [0,1]");
  double acc = 0.0;
  for (Index m = 0; m < n_samples; ++m) {
    const double d = static_cast<double>(m - true_sum);
    acc += d * d;
  }
  return p_e * acc;
}

double snr_r(double a_bar_c, double sigma2) {
  if (!(sigma2 > 0.0)) throw std::domain_error("sigma2 must be positive");
  return a_bar_c * a_bar_c / sigma2;
}

}  // namespace logfsk
