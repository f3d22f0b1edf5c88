#include "logfsk/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "logfsk/channel.hpp"
#include "logfsk/dsb.hpp"
#include "logfsk/receiver.hpp"
#include "logfsk/waveform.hpp"

namespace logfsk {

namespace {

// Stream tags keep message draws, Log-FSK noise, and DSB noise independent.
constexpr std::uint64_t kMessageTag = 0x6d657373ULL;
constexpr std::uint64_t kNoiseTag = 0x6e6f6973ULL;
constexpr std::uint64_t kDsbNoiseTag = 0x64736221ULL;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

struct MessageSampler {
  Index n_samples;
  int k_users;
  MeasurementLaw law;
  std::vector<Index> fixed;

  void validate() const {
    if (law != MeasurementLaw::fixed_list) return;
    if (fixed.size() != static_cast<std::size_t>(k_users)) {
      throw std::invalid_argument("fixed message list must hold one entry per user");
    }
    Index sum = 0;
    for (Index m : fixed) {
      if (m < 0 || m >= n_samples) {
        throw std::invalid_argument("fixed message outside [0, N-1]");
      }
      sum += m;
    }
    if (sum > n_samples - 1) {
      throw std::invalid_argument("fixed message sum exceeds N-1");
    }
  }

  // Per-user uniform range: the two-user comparison draws on [0, N/2] and
  // rejects the single out-of-range sum; larger user counts shrink the
  // per-user range so every tuple is admissible.
  Index per_user_max() const {
    return k_users == 2 ? n_samples / 2 : (n_samples - 1) / k_users;
  }

  // Aggregate at which message-independent theory columns are evaluated.
  Index representative_sum() const {
    if (law == MeasurementLaw::fixed_list) {
      return std::accumulate(fixed.begin(), fixed.end(), Index{0});
    }
    return k_users * per_user_max() / 2;
  }

  std::vector<Index> draw(std::mt19937_64& gen) const {
    if (law == MeasurementLaw::fixed_list) return fixed;
    std::uniform_int_distribution<Index> uni(0, per_user_max());
    std::vector<Index> out(static_cast<std::size_t>(k_users));
    while (true) {
      Index sum = 0;
      for (auto& m : out) {
        m = uni(gen);
        sum += m;
      }
      if (sum <= n_samples - 1) return out;
    }
  }
};

double theory_destination_snr(double snr_r_lin, Index n, int k, double b_c,
                              double p_p, double p) {
  const double design_power = 2.0 * static_cast<double>(n);
  if (k == 2 && std::abs(b_c * b_c - design_power) <= 1e-9 * design_power) {
    return snr_sigma_from_snr_r(snr_r_lin, p_p, p, n);
  }
  return snr_sigma(a_sigma(k, b_c, n), p_p, lognormal_stats(p / snr_r_lin, 1.0));
}

std::string bool_cell(bool b) { return b ? "1" : "0"; }

}  // namespace

std::vector<double> ExperimentConfig::snr_grid_db() const {
  if (!(snr_step_db > 0.0) || snr_max_db < snr_min_db) {
    throw std::invalid_argument("invalid SNR grid specification");
  }
  std::vector<double> grid;
  for (double v = snr_min_db; v <= snr_max_db + 1e-9; v += snr_step_db) {
    grid.push_back(v);
  }
  return grid;
}

LogFskParams ExperimentConfig::make_params(Index n) const {
  LogFskParams p;
  p.n_samples = n;
  p.b_c = b_c > 0.0 ? b_c : std::sqrt(2.0 * static_cast<double>(n));
  p.alpha = p.b_c * std::sqrt(2.0 / static_cast<double>(n)) + delta;
  p.a_bar_c = a_bar_c;
  p.subtract_mean = false;
  p.log_power = average_log_power(n, p.b_c, p.alpha);
  validate_or_throw(p);
  return p;
}

SpectrumDemo run_spectrum_demo(const ExperimentConfig& cfg) {
  SpectrumDemo demo;
  const Index n = cfg.n_samples;
  const Index sum_k2 =
      std::accumulate(demo.messages_k2.begin(), demo.messages_k2.end(), Index{0});
  const Index sum_k3 =
      std::accumulate(demo.messages_k3.begin(), demo.messages_k3.end(), Index{0});
  if (sum_k2 > n - 1 || sum_k3 > n - 1) {
    throw std::invalid_argument("spectrum demo needs N > 100");
  }

  const LogFskParams params = cfg.make_params(n);
  const AnalysisOperator op = build_analysis(n);

  auto analyze_case = [&](const std::vector<Index>& messages, Index& peak,
                          double& magnitude) {
    std::vector<VecX> frames;
    for (Index m : messages) frames.push_back(modulate(m, params));
    const VecX y = superpose(frames);
    ReceiverConfig rx{params, static_cast<int>(messages.size()),
                      cfg.threshold_fraction, cfg.dc_removal};
    const DemodOutcome out = demodulate(y, rx, op);
    peak = out.sum_estimate;
    magnitude = out.peak_magnitude;
    VecX r = exp_postprocess(y, params);
    if (cfg.dc_removal) {
      r.array() -= std::pow(params.alpha, static_cast<int>(messages.size()));
    }
    return analyze(op, r);
  };

  const VecX d2 = analyze_case(demo.messages_k2, demo.peak_index_k2,
                               demo.peak_magnitude_k2);
  const VecX d3 = analyze_case(demo.messages_k3, demo.peak_index_k3,
                               demo.peak_magnitude_k3);

  demo.spectra.header = {"index", "d_k2", "d_k3"};
  for (Index i = 0; i < n; ++i) {
    demo.spectra.add_row({std::to_string(i), csv::format(d2[i]), csv::format(d3[i])});
  }

  std::ostringstream msg;
  demo.assertions_pass = true;
  if (demo.peak_index_k2 != sum_k2 || demo.peak_index_k3 != sum_k3) {
    demo.assertions_pass = false;
    msg << "detected peaks (" << demo.peak_index_k2 << ", " << demo.peak_index_k3
        << ") do not sit at the message sums (" << sum_k2 << ", " << sum_k3
        << "). ";
  }
  const double rel = std::abs(demo.peak_magnitude_k2 - demo.peak_magnitude_k3) /
                     std::max(demo.peak_magnitude_k2, demo.peak_magnitude_k3);
  if (!(rel < 1e-6)) {
    demo.assertions_pass = false;
    msg << "peak magnitudes differ by relative " << rel << ". ";
  }
  demo.assertion_message = msg.str();
  return demo;
}

ThresholdCurves run_threshold_curves(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
  ThresholdCurves result;
  const std::vector<double> grid = cfg.snr_grid_db();

  for (Index n : cfg.curve_n_list) {
    const LogFskParams params = cfg.make_params(n);
    const AnalysisOperator op = build_analysis(n);
    const double p = params.log_power;

    for (int k : cfg.curve_k_list) {
      const double p_p = product_power_reference(params, k);
      const double a_sig = a_sigma(k, params.b_c, n);

      ThresholdReport report;
      report.n = n;
      report.k = k;
      report.p_p_reference_db = to_db(p_p);
      report.log_power_db = to_db(p);
      report.q_of_sqrt = threshold_snr_r(n, k, cfg.gamma_th,
                                         QInterpretation::q_of_sqrt, p_p, p);
      report.q_of_linear = threshold_snr_r(n, k, cfg.gamma_th,
                                           QInterpretation::q_of_linear, p_p, p);
      report.selected = cfg.q_interpretation == QInterpretation::q_of_sqrt
                            ? report.q_of_sqrt
                            : report.q_of_linear;
      result.thresholds.push_back(report);

      MessageSampler sampler{n, k, cfg.measurement_law, cfg.fixed_messages};
      sampler.validate();
      // Representative aggregate for the theory MSE column.
      const Index rep_sum = sampler.representative_sum();

      // Modulated frames are message-indexed; build each once.
      std::vector<VecX> frame_cache(static_cast<std::size_t>(n));
      std::vector<bool> cached(static_cast<std::size_t>(n), false);
      auto frame_of = [&](Index m) -> const VecX& {
        if (!cached[static_cast<std::size_t>(m)]) {
          frame_cache[static_cast<std::size_t>(m)] = modulate(m, params);
          cached[static_cast<std::size_t>(m)] = true;
        }
        return frame_cache[static_cast<std::size_t>(m)];
      };

      for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const auto start = std::chrono::steady_clock::now();
        const double snr_lin = from_db(grid[gi]);
        const double sigma2 = params.a_bar_c * params.a_bar_c / snr_lin;
        const AwgnChannel channel{
            sigma2, derive_stream_seed(cfg.master_seed, kNoiseTag,
                                       (static_cast<std::uint64_t>(n) << 32) ^
                                           (static_cast<std::uint64_t>(k) << 24) ^ gi)};

        std::uint64_t errors = 0, fallbacks = 0;
        double acc = 0.0, acc2 = 0.0;
        for (std::uint64_t t = 0; t < cfg.trials; ++t) {
          // Disjoint fields: grid point, frame length, user count, trial.
          std::mt19937_64 msg_gen(derive_stream_seed(
              cfg.master_seed, kMessageTag,
              (static_cast<std::uint64_t>(gi) << 52) |
                  (static_cast<std::uint64_t>(n) << 40) |
                  (static_cast<std::uint64_t>(k) << 34) | t));
          const std::vector<Index> messages = sampler.draw(msg_gen);
          const Index sum =
              std::accumulate(messages.begin(), messages.end(), Index{0});
          const bool has_zero_message =
              std::find(messages.begin(), messages.end(), Index{0}) !=
              messages.end();

          VecX clean = frame_of(messages.front());
          for (std::size_t u = 1; u < messages.size(); ++u) {
            clean += frame_of(messages[u]);
          }
          const VecX y = add_awgn(clean, channel, t);

          VecX r = exp_postprocess(y, params);
          if (cfg.dc_removal) r.array() -= std::pow(params.alpha, k);
          const VecX d = analyze(op, r);
          const Detection det =
              detect_max_frequency(d, cfg.threshold_fraction * a_sig);

          errors += det.index != sum;
          fallbacks += det.below_threshold;

          // Sum-bin statistic, referenced to this tuple's clean peak. A zero
          // message is a constant factor whose lines pile onto the sum bin,
          // so those tuples carry a clean peak above A_sigma.
          double clean_peak = a_sig;
          if (has_zero_message) {
            const VecX r0 = exp_postprocess(clean, params);
            clean_peak = op.analysis.row(sum).dot(r0) -
                         (cfg.dc_removal
                              ? std::pow(params.alpha, k) *
                                    op.analysis.row(sum).sum()
                              : 0.0);
          }
          const double centered = d[sum] - clean_peak + a_sig;
          acc += centered;
          acc2 += centered * centered;
        }

        const double trials_d = static_cast<double>(cfg.trials);
        const double mean = acc / trials_d;
        const double var = acc2 / trials_d - mean * mean;
        const double bias = mean - a_sig;
        const double denom = var + bias * bias;

        ThresholdCurveRow row;
        row.snr_r_db = grid[gi];
        row.n = n;
        row.k = k;
        const double snr_sigma_theory =
            theory_destination_snr(snr_lin, n, k, params.b_c, p_p, p);
        row.snr_sigma_theory_db = to_db(snr_sigma_theory);
        row.snr_sigma_emp_db =
            denom == 0.0 ? std::numeric_limits<double>::infinity()
                         : to_db(a_sig * a_sig / denom);
        row.pe_theory = error_prob(n, snr_sigma_theory, cfg.q_interpretation);
        row.pe_emp = static_cast<double>(errors) / trials_d;
        row.pe_censored = row.pe_emp < 10.0 / trials_d;
        const double pe_for_mse = row.pe_theory;
        row.mse_theory = cfg.literal_mse ? mse_literal(n, pe_for_mse, rep_sum)
                                         : mse(n, pe_for_mse, rep_sum);
        row.fallback_rate = static_cast<double>(fallbacks) / trials_d;
        row.trials = cfg.trials;
        row.wall_time_seconds = elapsed_seconds(start);
        result.rows.push_back(row);
      }
    }
  }
  return result;
}

std::vector<NmseRow> run_nmse_comparison(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
  const Index n = cfg.n_samples;
  const LogFskParams params = cfg.make_params(n);
  const AnalysisOperator op = build_analysis(n);
  const int k = cfg.k_users;
  MessageSampler sampler{n, k, cfg.measurement_law, cfg.fixed_messages};
  sampler.validate();
  const ReceiverConfig rx{params, k, cfg.threshold_fraction, cfg.dc_removal};

  std::vector<VecX> frame_cache(static_cast<std::size_t>(n));
  std::vector<bool> cached(static_cast<std::size_t>(n), false);
  auto frame_of = [&](Index m) -> const VecX& {
    if (!cached[static_cast<std::size_t>(m)]) {
      frame_cache[static_cast<std::size_t>(m)] = modulate(m, params);
      cached[static_cast<std::size_t>(m)] = true;
    }
    return frame_cache[static_cast<std::size_t>(m)];
  };

  const std::vector<double> grid = cfg.snr_grid_db();
  std::vector<NmseRow> rows;
  rows.reserve(grid.size());

  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const auto start = std::chrono::steady_clock::now();
    const double snr_lin = from_db(grid[gi]);
    const double sigma2 = params.a_bar_c * params.a_bar_c / snr_lin;
    const AwgnChannel logfsk_channel{
        sigma2, derive_stream_seed(cfg.master_seed, kNoiseTag, gi)};
    const AwgnChannel dsb_channel{
        sigma2, derive_stream_seed(cfg.master_seed, kDsbNoiseTag, gi)};
    const DsbConfig dsb = make_dsb_config(n, params.a_bar_c, sigma2);

    double se_logfsk = 0.0, se_dsb = 0.0, sum_sq = 0.0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
      std::mt19937_64 msg_gen(derive_stream_seed(
          cfg.master_seed, kMessageTag, (static_cast<std::uint64_t>(gi) << 40) ^ t));
      const std::vector<Index> messages = sampler.draw(msg_gen);
      const Index sum = std::accumulate(messages.begin(), messages.end(), Index{0});
      sum_sq += static_cast<double>(sum) * static_cast<double>(sum);

      VecX clean = frame_of(messages.front());
      for (std::size_t u = 1; u < messages.size(); ++u) clean += frame_of(messages[u]);
      const VecX y = add_awgn(clean, logfsk_channel, t);
      const DemodOutcome out = demodulate(y, rx, op);
      const double err_logfsk = static_cast<double>(out.sum_estimate - sum);
      se_logfsk += err_logfsk * err_logfsk;

      VecX dsb_clean = VecX::Zero(n);
      for (Index m : messages) {
        dsb_clean += dsb_transmit(static_cast<double>(m), dsb);
      }
      const VecX dsb_y = add_awgn(dsb_clean, dsb_channel, t);
      const double err_dsb = dsb_estimate_sum(dsb_y, dsb) - static_cast<double>(sum);
      se_dsb += err_dsb * err_dsb;
    }

    NmseRow row;
    row.snr_r_db = grid[gi];
    row.nmse_logfsk = sum_sq == 0.0 ? 0.0 : se_logfsk / sum_sq;
    row.nmse_dsb = sum_sq == 0.0 ? 0.0 : se_dsb / sum_sq;
    row.trials = cfg.trials;
    row.seed = cfg.master_seed;
    row.wall_time_seconds = elapsed_seconds(start);
    rows.push_back(row);
  }
  return rows;
}

std::vector<TheoryRow> run_theory_only(const ExperimentConfig& cfg) {
  std::vector<TheoryRow> rows;
  const std::vector<double> grid = cfg.snr_grid_db();
  for (Index n : cfg.curve_n_list) {
    const LogFskParams params = cfg.make_params(n);
    const double p = params.log_power;
    for (int k : cfg.curve_k_list) {
      const double p_p = product_power_reference(params, k);
      MessageSampler sampler{n, k, cfg.measurement_law, cfg.fixed_messages};
      sampler.validate();
      const Index rep_sum = sampler.representative_sum();
      for (double snr_db : grid) {
        TheoryRow row;
        row.snr_r_db = snr_db;
        row.n = n;
        row.k = k;
        const double snr_sigma_theory =
            theory_destination_snr(from_db(snr_db), n, k, params.b_c, p_p, p);
        row.snr_sigma_theory_db = to_db(snr_sigma_theory);
        row.snr_sigma_highsnr_db =
            high_snr_approx_db(snr_db, to_db(p_p), to_db(p), n);
        row.pe_theory = error_prob(n, snr_sigma_theory, cfg.q_interpretation);
        row.mse_theory = cfg.literal_mse ? mse_literal(n, row.pe_theory, rep_sum)
                                         : mse(n, row.pe_theory, rep_sum);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

csv::Table to_csv(const std::vector<ThresholdCurveRow>& rows) {
  csv::Table t;
  t.header = {"snr_r_db", "n", "k", "snr_sigma_theory_db", "snr_sigma_emp_db",
              "pe_theory", "pe_emp", "pe_censored", "mse_theory",
              "fallback_rate", "trials"};
  for (const auto& r : rows) {
    t.add_row({csv::format(r.snr_r_db), std::to_string(r.n), std::to_string(r.k),
               csv::format(r.snr_sigma_theory_db), csv::format(r.snr_sigma_emp_db),
               csv::format(r.pe_theory), csv::format(r.pe_emp),
               bool_cell(r.pe_censored), csv::format(r.mse_theory),
               csv::format(r.fallback_rate), std::to_string(r.trials)});
  }
  return t;
}

csv::Table to_csv(const std::vector<NmseRow>& rows) {
  csv::Table t;
  t.header = {"snr_r_db", "nmse_logfsk", "nmse_dsb", "trials", "seed"};
  for (const auto& r : rows) {
    t.add_row({csv::format(r.snr_r_db), csv::format(r.nmse_logfsk),
               csv::format(r.nmse_dsb), std::to_string(r.trials),
               std::to_string(r.seed)});
  }
  return t;
}

csv::Table to_csv(const std::vector<TheoryRow>& rows) {
  csv::Table t;
  t.header = {"snr_r_db", "n", "k", "snr_sigma_theory_db",
              "snr_sigma_highsnr_db", "pe_theory", "mse_theory"};
  for (const auto& r : rows) {
    t.add_row({csv::format(r.snr_r_db), std::to_string(r.n), std::to_string(r.k),
               csv::format(r.snr_sigma_theory_db),
               csv::format(r.snr_sigma_highsnr_db), csv::format(r.pe_theory),
               csv::format(r.mse_theory)});
  }
  return t;
}

}  // namespace logfsk
