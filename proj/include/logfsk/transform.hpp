#pragma once

#include <vector>

#include "logfsk/types.hpp"

namespace logfsk {

/// Synthesis/analysis pair for one frame length. `synthesis` holds
/// cosine_basis(m, N) in column m; `analysis` is its exact matrix inverse,
/// so analyzing a basis vector returns a unit spectrum (delta response).
/// Immutable after construction; build once per N and share freely.
struct AnalysisOperator {
  Index n_samples = 0;
  MatX synthesis;  // C, column m = cos_m
  MatX analysis;   // Q = C^-1
};

/// Builds the operator and verifies |Q*C - I| stays below 1e-12.
/// Throws std::runtime_error if the synthesis matrix cannot be inverted to
/// that accuracy (never expected for this basis).
AnalysisOperator build_analysis(Index n_samples);

/// d = Q * frame. Throws on length mismatch.
VecX analyze(const AnalysisOperator& op, Eigen::Ref<const VecX> frame);

/// frame = C * spectrum. Throws on length mismatch.
VecX synthesize(const AnalysisOperator& op, Eigen::Ref<const VecX> spectrum);

/// Thresholded maximum-frequency pick.
struct Detection {
  Index index = 0;               // largest qualifying index, or argmax fallback
  double peak_magnitude = 0.0;   // |d[index]|
  bool below_threshold = false;  // no bin reached the threshold
  std::vector<Index> candidates; // ascending indices with |d[i]| >= threshold
};

/// Returns the largest index whose magnitude reaches `threshold`; when no
/// bin qualifies, falls back to the argmax of |d| and sets below_threshold.
Detection detect_max_frequency(Eigen::Ref<const VecX> spectrum, double threshold);

}  // namespace logfsk
