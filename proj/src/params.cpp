#include "logfsk/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "logfsk/waveform.hpp"

namespace logfsk {

double LogFskParams::amplitude_gain() const {
  return a_bar_c / std::sqrt(log_power);
}

std::vector<ParamViolation> validate(const LogFskParams& p) {
  std::vector<ParamViolation> out;
  auto add = [&out](ParamViolation::Kind kind, const std::string& msg) {
    out.push_back({kind, msg});
  };

  if (p.n_samples < 2) {
    add(ParamViolation::Kind::TooFewSamples,
        "n_samples must be at least 2, got " + std::to_string(p.n_samples));
  }
  if (!(p.alpha > 0.0)) {
    add(ParamViolation::Kind::AlphaNotPositive,
        "alpha must be positive, got " + std::to_string(p.alpha));
  }
  if (!(p.b_c > 0.0)) {
    add(ParamViolation::Kind::BcNotPositive,
        "b_c must be positive, got " + std::to_string(p.b_c));
  }
  if (p.n_samples >= 2 && p.alpha > 0.0 && p.b_c > 0.0) {
    const double bound = p.b_c * std::sqrt(2.0 / static_cast<double>(p.n_samples));
    if (!(p.alpha > bound)) {
      std::ostringstream os;
      os << "alpha must strictly exceed b_c*sqrt(2/N) = " << bound
         << " to keep the logarithm argument positive, got alpha = " << p.alpha;
      add(ParamViolation::Kind::AlphaBelowLogBound, os.str());
    }
  }
  if (p.n_samples >= 2 && p.b_c > 0.0) {
    const double det_bound = std::sqrt(2.0 * static_cast<double>(p.n_samples));
    if (p.b_c < det_bound) {
      std::ostringstream os;
      os << "b_c = " << p.b_c << " is below sqrt(2N) = " << det_bound
         << "; the sum-frequency amplitude decays with each extra user";
      add(ParamViolation::Kind::BcBelowDetectionBound, os.str());
    }
  }
  if (!(p.a_bar_c > 0.0)) {
    add(ParamViolation::Kind::TransmitAmplitudeNotPositive,
        "a_bar_c must be positive, got " + std::to_string(p.a_bar_c));
  }
  if (!(p.log_power > 0.0) || !std::isfinite(p.log_power)) {
    add(ParamViolation::Kind::LogPowerNotPositive,
        "log_power must be positive and finite, got " + std::to_string(p.log_power));
  }
  return out;
}

void validate_or_throw(const LogFskParams& p) {
  const auto violations = validate(p);
  if (violations.empty()) return;
  std::ostringstream os;
  os << "invalid Log-FSK parameters:";
  for (const auto& v : violations) os << "\n  - " << v.message;
  throw std::domain_error(os.str());
}

double log_term_power(Index m, const LogFskParams& params) {
  if (m < 0 || m >= params.n_samples) {
    throw std::domain_error("message index out of range: " + std::to_string(m));
  }
  const VecX basis = cosine_basis(m, params.n_samples);
  const VecX arg = (params.b_c * basis).array() + params.alpha;
  if (arg.minCoeff() <= 0.0) {
    throw std::domain_error("logarithm argument not positive; "
                            "alpha must exceed b_c*sqrt(2/N)");
  }
  return arg.array().log().square().mean();
}

namespace {

double mean_log_power(Index n_samples, double b_c, double alpha, Index m_max) {
  LogFskParams probe;
  probe.n_samples = n_samples;
  probe.b_c = b_c;
  probe.alpha = alpha;
  double acc = 0.0;
  for (Index m = 0; m <= m_max; ++m) acc += log_term_power(m, probe);
  return acc / static_cast<double>(m_max + 1);
}

}  // namespace

double average_log_power(Index n_samples, double b_c, double alpha) {
  return mean_log_power(n_samples, b_c, alpha, n_samples / 2);
}

double worst_case_log_power(Index n_samples, double b_c, double alpha) {
  LogFskParams probe;
  probe.n_samples = n_samples;
  probe.b_c = b_c;
  probe.alpha = alpha;
  double worst = 0.0;
  for (Index m = 0; m < n_samples; ++m) {
    worst = std::max(worst, log_term_power(m, probe));
  }
  return worst;
}

LogFskParams design_params(Index n_samples, double delta, double a_bar_c) {
  LogFskParams p;
  p.n_samples = n_samples;
  p.b_c = std::sqrt(2.0 * static_cast<double>(n_samples));
  p.alpha = p.b_c * std::sqrt(2.0 / static_cast<double>(n_samples)) + delta;
  p.a_bar_c = a_bar_c;
  p.subtract_mean = false;
  p.log_power = average_log_power(n_samples, p.b_c, p.alpha);
  validate_or_throw(p);
  return p;
}

}  // namespace logfsk
