#include <doctest.h>

#include <cmath>
#include <random>

#include "logfsk/theory.hpp"
#include "logfsk/waveform.hpp"

using namespace logfsk;

TEST_CASE("log-normal moments: degenerate and unit-ratio points") {
  const LogNormalStats zero = lognormal_stats(0.0, 2.0);
  CHECK(zero.mu_z == 1.0);
  CHECK(zero.sigma2_z == 0.0);

  const LogNormalStats unit = lognormal_stats(4.0, 2.0);  // sigma2/A_c^2 = 1
  CHECK(unit.mu_z == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
  CHECK(unit.sigma2_z ==
        doctest::Approx(std::exp(1.0) * (std::exp(1.0) - 1.0)).epsilon(1e-12));
}

TEST_CASE("log-normal moments approach (1, 0) monotonically") {
  double prev_mu = 1e300, prev_var = 1e300;
  for (double s2 : {1.0, 0.3, 0.1, 0.01, 1e-4, 1e-8}) {
    const LogNormalStats st = lognormal_stats(s2, 1.0);
    CHECK(st.mu_z >= 1.0);
    CHECK(st.sigma2_z >= 0.0);
    CHECK(st.mu_z < prev_mu);
    CHECK(st.sigma2_z < prev_var);
    prev_mu = st.mu_z;
    prev_var = st.sigma2_z;
  }
}

TEST_CASE("log-normal moments agree with a sampling oracle") {
  // 10^6 draws of exp(w/A_c) with sigma2/A_c^2 = 0.25.
  std::mt19937_64 gen(314159);
  std::normal_distribution<double> gauss(0.0, 0.5);
  const std::size_t draws = 1000000;
  double acc = 0.0, acc2 = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double z = std::exp(gauss(gen));
    acc += z;
    acc2 += z * z;
  }
  const double mean = acc / draws;
  const double var = acc2 / draws - mean * mean;
  const LogNormalStats st = lognormal_stats(0.25, 1.0);
  CHECK(std::abs(mean - st.mu_z) / st.mu_z < 0.01);
  CHECK(std::abs(var - st.sigma2_z) / st.sigma2_z < 0.01);
}

TEST_CASE("sum-bin amplitude closed form") {
  CHECK(a_sigma(1, 7.0, 64) == doctest::Approx(7.0));
  const double b = std::sqrt(512.0);
  CHECK(a_sigma(2, b, 256) == doctest::Approx(b).epsilon(1e-12));
  for (int k = 1; k <= 5; ++k) {
    CHECK(a_sigma(k, b, 256) == doctest::Approx(b).epsilon(1e-12));
  }
  CHECK(a_sigma(2, b, 256) * a_sigma(2, b, 256) ==
        doctest::Approx(512.0).epsilon(1e-12));
}

TEST_CASE("product power matches the exponent-form oracle") {
  const Index N = 64;
  const LogFskParams p = design_params(N);
  const double value = product_power(p, {10, 20});

  // Oracle: (1/N) sum exp((2/A_c)(x_k + x_l)) with the real modulated frames.
  const VecX x = modulate(10, p) + modulate(20, p);
  const double a_c = p.amplitude_gain();
  const double oracle = (2.0 * x / a_c).array().exp().mean();
  CHECK(value == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("product power grows with the number of users") {
  const LogFskParams p = design_params(128);
  const double p2 = product_power(p, {10, 30});
  const double p3 = product_power(p, {10, 30, 50});
  const double p4 = product_power(p, {10, 30, 50, 20});
  CHECK(p2 < p3);
  CHECK(p3 < p4);
  CHECK(product_power_reference(p, 2) < product_power_reference(p, 3));
  CHECK(product_power_reference(p, 3) < product_power_reference(p, 4));
}

TEST_CASE("constant-factor limit of the product power") {
  LogFskParams p;
  p.n_samples = 32;
  p.b_c = 1e-9;
  p.alpha = 1.0;
  p.log_power = 1.0;
  CHECK(product_power(p, {5}) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("destination SNR: noiseless sentinel and route consistency") {
  CHECK(std::isinf(snr_sigma(10.0, 40.0, lognormal_stats(0.0, 1.0))));

  // The two closed forms agree at the design point B_c = sqrt(2N).
  const Index N = 256;
  const LogFskParams p = design_params(N);
  const double p_p = product_power(p, {40, 60});
  const double a_sig = a_sigma(2, p.b_c, N);
  for (int i = 0; i < 20; ++i) {
    const double snr_db = -10.0 + 2.5 * i;
    const double snr = from_db(snr_db);
    const double via16 =
        snr_sigma(a_sig, p_p, lognormal_stats(p.log_power / snr, 1.0));
    const double via17 = snr_sigma_from_snr_r(snr, p_p, p.log_power, N);
    CHECK(std::abs(via16 - via17) / via17 < 1e-9);
  }
}

TEST_CASE("destination SNR increases with the received SNR") {
  const LogFskParams p = design_params(256);
  const double p_p = product_power_reference(p, 2);
  double prev = 0.0;
  for (double snr_db = -20.0; snr_db <= 60.0; snr_db += 0.5) {
    const double s = snr_sigma_from_snr_r(from_db(snr_db), p_p, p.log_power, 256);
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("threshold knee: steep below, unit slope above") {
  const Index N = 256;
  const LogFskParams p = design_params(N);
  const double p_p = product_power_reference(p, 2);
  const ThresholdPoint thr = threshold_snr_r(N, 2, 1e-4,
                                             QInterpretation::q_of_linear, p_p,
                                             p.log_power);
  auto slope_at = [&](double snr_db) {
    const double h = 0.25;
    const double hi =
        to_db(snr_sigma_from_snr_r(from_db(snr_db + h), p_p, p.log_power, N));
    const double lo =
        to_db(snr_sigma_from_snr_r(from_db(snr_db - h), p_p, p.log_power, N));
    return (hi - lo) / (2.0 * h);
  };
  double steepest = 0.0;
  for (double s = thr.snr_r_db - 15.0; s < thr.snr_r_db; s += 0.5) {
    steepest = std::max(steepest, slope_at(s));
  }
  CHECK(steepest > 1.5);
  CHECK(slope_at(thr.snr_r_db + 25.0) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("high-SNR law: agreement, exact 3 dB per doubling, at 40 dB") {
  const Index N = 256;
  const LogFskParams p = design_params(N);
  const double p_p = product_power_reference(p, 2);
  const double p_p_db = to_db(p_p), p_db = to_db(p.log_power);

  for (double snr_db : {30.0, 35.0, 40.0}) {
    const double exact =
        to_db(snr_sigma_from_snr_r(from_db(snr_db), p_p, p.log_power, N));
    const double approx = high_snr_approx_db(snr_db, p_p_db, p_db, N);
    CHECK(std::abs(exact - approx) < 0.5);
  }

  const double shift = high_snr_approx_db(40.0, p_p_db, p_db, 512) -
                       high_snr_approx_db(40.0, p_p_db, p_db, 256);
  CHECK(shift == doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-12));
}

TEST_CASE("error probability: limits, clamping, inverse consistency") {
  CHECK(error_prob(256, 1e12, QInterpretation::q_of_sqrt) < 1e-12);
  CHECK(error_prob(256, 0.0, QInterpretation::q_of_sqrt) == 1.0);
  CHECK(error_prob(3, 0.0, QInterpretation::q_of_sqrt) == 1.0);
  CHECK(error_prob(2, 0.0, QInterpretation::q_of_sqrt) == doctest::Approx(0.5));

  // Pick SNR so that Q(sqrt(SNR)) = 1e-4 / 255 and recover P_e = 1e-4.
  const double q_arg = gaussian_q_inv(1e-4 / 255.0);
  CHECK(error_prob(256, q_arg * q_arg, QInterpretation::q_of_sqrt) ==
        doctest::Approx(1e-4).epsilon(1e-9));
  CHECK(error_prob(256, q_arg, QInterpretation::q_of_linear) ==
        doctest::Approx(1e-4).epsilon(1e-9));
}

TEST_CASE("error probability is monotone in SNR and alphabet size") {
  double prev = 2.0;
  for (double s : {0.0, 1.0, 4.0, 9.0, 16.0, 25.0}) {
    const double pe = error_prob(64, s, QInterpretation::q_of_sqrt);
    CHECK(pe <= prev);
    prev = pe;
  }
  CHECK(error_prob(128, 9.0, QInterpretation::q_of_sqrt) <=
        error_prob(256, 9.0, QInterpretation::q_of_sqrt));
}

TEST_CASE("gaussian tail inverse round-trips") {
  for (double p : {0.4, 0.1, 1e-3, 1e-6, 3.9e-7}) {
    CHECK(gaussian_q(gaussian_q_inv(p)) == doctest::Approx(p).epsilon(1e-9));
  }
  CHECK_THROWS_AS(gaussian_q_inv(0.0), std::domain_error);
  CHECK_THROWS_AS(gaussian_q_inv(1.0), std::domain_error);
}

TEST_CASE("threshold solve hits the documented operating points") {
  const Index N = 256;
  const LogFskParams p = design_params(N);
  const double p_p2 = product_power_reference(p, 2);

  const ThresholdPoint lin = threshold_snr_r(N, 2, 1e-4,
                                             QInterpretation::q_of_linear, p_p2,
                                             p.log_power);
  CHECK(lin.snr_sigma_db == doctest::Approx(7.0).epsilon(0.07));

  // Residual: the destination SNR at the solved received SNR matches the
  // target to the solver tolerance.
  const double attained =
      to_db(snr_sigma_from_snr_r(from_db(lin.snr_r_db), p_p2, p.log_power, N));
  CHECK(std::abs(attained - lin.snr_sigma_db) < 0.05);

  const ThresholdPoint small = threshold_snr_r(16, 2, 0.5,
                                               QInterpretation::q_of_linear,
                                               product_power_reference(design_params(16), 2),
                                               design_params(16).log_power);
  CHECK(std::isfinite(small.snr_r_db));

  CHECK_THROWS_AS(threshold_snr_r(N, 2, 1e-4, QInterpretation::q_of_sqrt,
                                  1e30, p.log_power),
                  std::runtime_error);
}

TEST_CASE("mse: zero on success, two-bin enumeration, literal variant") {
  CHECK(mse(256, 0.0, 100) == 0.0);
  CHECK(mse(3, 1.0, 0) == doctest::Approx(2.5));          // (1 + 4) / 2
  CHECK(mse_literal(3, 1.0, 0) == doctest::Approx(5.0));  // includes every bin
  CHECK(mse_literal(3, 1.0, 1) == doctest::Approx(2.0));

  // Independent enumeration for a larger case.
  const Index N = 64, S = 20;
  double acc = 0.0;
  for (Index m = 0; m < N; ++m) {
    if (m != S) acc += static_cast<double>((m - S) * (m - S));
  }
  CHECK(mse(N, 0.25, S) == doctest::Approx(0.25 * acc / (N - 1)).epsilon(1e-12));
}

TEST_CASE("received SNR definition") {
  CHECK(snr_r(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(snr_r(std::sqrt(10.0), 1.0) == doctest::Approx(10.0));
  CHECK_THROWS_AS(snr_r(1.0, 0.0), std::domain_error);
}
