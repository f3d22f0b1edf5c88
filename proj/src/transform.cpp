#include "logfsk/transform.hpp"

#include <Eigen/LU>
#include <stdexcept>

#include "logfsk/waveform.hpp"

namespace logfsk {

AnalysisOperator build_analysis(Index n_samples) {
  if (n_samples < 2) {
    throw std::domain_error("n_samples must be at least 2");
  }
  AnalysisOperator op;
  op.n_samples = n_samples;
  op.synthesis.resize(n_samples, n_samples);
  for (Index m = 0; m < n_samples; ++m) {
    op.synthesis.col(m) = cosine_basis(m, n_samples);
  }
  Eigen::PartialPivLU<MatX> lu(op.synthesis);
  op.analysis = lu.inverse();
  // One Newton-Schulz refinement keeps the delta response at machine level
  // for every N the library supports.
  op.analysis += op.analysis * (MatX::Identity(n_samples, n_samples) -
                                op.synthesis * op.analysis);
  const double residual =
      (op.analysis * op.synthesis - MatX::Identity(n_samples, n_samples))
          .cwiseAbs()
          .maxCoeff();
  if (!(residual < 1e-12)) {
    throw std::runtime_error("analysis operator construction failed: |QC-I| = " +
                             std::to_string(residual));
  }
  return op;
}

VecX analyze(const AnalysisOperator& op, Eigen::Ref<const VecX> frame) {
  if (frame.size() != op.n_samples) {
    throw std::invalid_argument("frame length " + std::to_string(frame.size()) +
                                " does not match operator size " +
                                std::to_string(op.n_samples));
  }
  return op.analysis * frame;
}

VecX synthesize(const AnalysisOperator& op, Eigen::Ref<const VecX> spectrum) {
  if (spectrum.size() != op.n_samples) {
    throw std::invalid_argument("spectrum length does not match operator size");
  }
  return op.synthesis * spectrum;
}

Detection detect_max_frequency(Eigen::Ref<const VecX> spectrum, double threshold) {
  if (!(threshold > 0.0)) {
    throw std::domain_error("detection threshold must be positive");
  }
  Detection det;
  for (Index i = 0; i < spectrum.size(); ++i) {
    if (std::abs(spectrum[i]) >= threshold) det.candidates.push_back(i);
  }
  if (det.candidates.empty()) {
    det.below_threshold = true;
    spectrum.cwiseAbs().maxCoeff(&det.index);
  } else {
    det.index = det.candidates.back();
  }
  det.peak_magnitude = std::abs(spectrum[det.index]);
  return det;
}

}  // namespace logfsk
