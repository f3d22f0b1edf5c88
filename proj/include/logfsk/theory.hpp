#pragma once

#include <cmath>
#include <vector>

#include "logfsk/params.hpp"
#include "logfsk/types.hpp"

namespace logfsk {

/// Moments of the multiplicative noise z[n] = exp(w[n]/A_c).
struct LogNormalStats {
  double mu_z = 1.0;      // exp(sigma2 / (2 A_c^2))
  double sigma2_z = 0.0;  // exp(s)(exp(s)-1), s = sigma2/A_c^2
};

LogNormalStats lognormal_stats(double sigma2, double a_c);

/// Noiseless amplitude of the sum-frequency bin for K users:
/// B_c^K (1/2)^(K-1) (2/N)^((K-1)/2). Equals B_c for every K when
/// B_c = sqrt(2N).
double a_sigma(int k_users, double b_c, Index n_samples);

/// Time-average power of the exponentiated noiseless superposition,
/// (1/N) sum_n prod_k (B_c cos_{m_k}[n] + alpha)^2.
double product_power(const LogFskParams& params, const std::vector<Index>& messages);

/// product_power averaged over per-user uniform messages on
/// {0..floor((N-1)/K)} (every tuple of that law keeps the sum in range).
/// Used as the message-independent reference for theory curves.
double product_power_reference(const LogFskParams& params, int k_users);

/// Destination SNR from its ingredients: A^2 / (P_p s2_z + A^2 (mu_z - 1)^2).
/// Returns +infinity in the noiseless limit.
double snr_sigma(double a_sig, double p_p, const LogNormalStats& stats);

/// Destination SNR as a function of the per-user received SNR (linear),
/// valid for the B_c = sqrt(2N) design where the sum-bin power is 2N:
/// 1/SNR = (P_p/2N) e^x (e^x - 1) + (e^(x/2) - 1)^2 with x = P/SNR_R.
double snr_sigma_from_snr_r(double snr_r, double p_p, double p, Index n_samples);

/// High-SNR law in dB: 10log10(2N) + SNR_R - P_p - P.
double high_snr_approx_db(double snr_r_db, double p_p_db, double p_db,
                          Index n_samples);

/// Gaussian tail probability Q(x) and its inverse (monotone, exact to
/// double precision via bisection + Newton polish).
double gaussian_q(double x);
double gaussian_q_inv(double p);

/// The detection-error formula reads Q(sqrt(SNR)); only the linear-argument
/// variant reproduces the 7 dB threshold figure. Both are first-class.
enum class QInterpretation { q_of_sqrt, q_of_linear };

/// (N-1) Q(arg), clamped to [0, 1].
double error_prob(Index n_samples, double snr_sigma_linear,
                  QInterpretation interp = QInterpretation::q_of_sqrt);

struct ThresholdPoint {
  double snr_sigma_db = 0.0;  // destination SNR meeting the error budget
  double snr_r_db = 0.0;      // received SNR that attains it
};

/// Solves error_prob = gamma_th for the destination SNR, then inverts the
/// destination-vs-received relation by bisection on [-20, 80] dB to 0.01 dB.
/// K = 2 uses the closed received-SNR form; K > 2 goes through snr_sigma
/// with the K-user amplitude and product power.
ThresholdPoint threshold_snr_r(Index n_samples, int k_users, double gamma_th,
                               QInterpretation interp, double p_p, double p);

/// Detection MSE under the uniform-wrong-bin model: p_e times the mean
/// squared distance from the true sum over the N-1 wrong bins.
double mse(Index n_samples, double p_e, Index true_sum);

/// Literal variant that sums the squared distance over all N bins.
double mse_literal(Index n_samples, double p_e, Index true_sum);

/// Per-user received SNR a_bar_c^2 / sigma2.
double snr_r(double a_bar_c, double sigma2);

inline double to_db(double x) { return 10.0 * std::log10(x); }
inline double from_db(double x_db) { return std::pow(10.0, x_db / 10.0); }

}  // namespace logfsk
