#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logfsk/csv.hpp"
#include "logfsk/params.hpp"
#include "logfsk/theory.hpp"
#include "logfsk/types.hpp"

namespace logfsk {

enum class MeasurementLaw { uniform_sum_constrained, fixed_list };

/// Everything a reproducible run depends on. A run's outputs are a pure
/// function of this struct; the same config and seed give byte-identical
/// CSV regardless of where or how often it executes.
struct ExperimentConfig {
  Index n_samples = 256;
  int k_users = 2;
  double b_c = 0.0;    // 0 selects the design value sqrt(2N)
  double delta = 0.1;  // alpha = B_c*sqrt(2/N) + delta
  double a_bar_c = 1.0;

  double snr_min_db = -5.0;
  double snr_max_db = 30.0;
  double snr_step_db = 5.0;

  std::uint64_t trials = 10000;
  std::uint64_t master_seed = 1;
  double gamma_th = 1e-4;

  MeasurementLaw measurement_law = MeasurementLaw::uniform_sum_constrained;
  std::vector<Index> fixed_messages;  // used when measurement_law == fixed_list

  QInterpretation q_interpretation = QInterpretation::q_of_sqrt;
  bool literal_mse = false;
  double threshold_fraction = 0.5;
  bool dc_removal = true;

  // threshold-curves sweeps every (n, k) pair of these lists.
  std::vector<Index> curve_n_list = {64, 256, 1024};
  std::vector<int> curve_k_list = {2, 3, 4, 5};

  std::vector<double> snr_grid_db() const;
  LogFskParams make_params(Index n) const;  // design with b_c/delta overrides
};

/// Noiseless spectrum demo for the two-user and three-user showcases.
struct SpectrumDemo {
  std::vector<Index> messages_k2 = {40, 60};
  std::vector<Index> messages_k3 = {10, 35, 55};
  Index peak_index_k2 = 0;
  Index peak_index_k3 = 0;
  double peak_magnitude_k2 = 0.0;
  double peak_magnitude_k3 = 0.0;
  csv::Table spectra;  // index, magnitude_k2, magnitude_k3
  bool assertions_pass = false;
  std::string assertion_message;
};

SpectrumDemo run_spectrum_demo(const ExperimentConfig& cfg);

struct ThresholdCurveRow {
  double snr_r_db = 0.0;
  Index n = 0;
  int k = 0;
  double snr_sigma_theory_db = 0.0;
  double snr_sigma_emp_db = 0.0;
  double pe_theory = 0.0;
  double pe_emp = 0.0;
  bool pe_censored = false;
  double mse_theory = 0.0;
  double fallback_rate = 0.0;
  std::uint64_t trials = 0;
  double wall_time_seconds = 0.0;  // reported on stdout, never in the CSV
};

struct ThresholdReport {
  Index n = 0;
  int k = 0;
  ThresholdPoint selected;     // under cfg.q_interpretation
  ThresholdPoint q_of_sqrt;    // both interpretations, always reported
  ThresholdPoint q_of_linear;
  double p_p_reference_db = 0.0;
  double log_power_db = 0.0;
};

struct ThresholdCurves {
  std::vector<ThresholdCurveRow> rows;
  std::vector<ThresholdReport> thresholds;
};

ThresholdCurves run_threshold_curves(const ExperimentConfig& cfg);

struct NmseRow {
  double snr_r_db = 0.0;
  double nmse_logfsk = 0.0;
  double nmse_dsb = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double wall_time_seconds = 0.0;
};

std::vector<NmseRow> run_nmse_comparison(const ExperimentConfig& cfg);

struct TheoryRow {
  double snr_r_db = 0.0;
  Index n = 0;
  int k = 0;
  double snr_sigma_theory_db = 0.0;
  double snr_sigma_highsnr_db = 0.0;
  double pe_theory = 0.0;
  double mse_theory = 0.0;
};

std::vector<TheoryRow> run_theory_only(const ExperimentConfig& cfg);

csv::Table to_csv(const std::vector<ThresholdCurveRow>& rows);
csv::Table to_csv(const std::vector<NmseRow>& rows);
csv::Table to_csv(const std::vector<TheoryRow>& rows);

}  // namespace logfsk
