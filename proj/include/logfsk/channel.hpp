#pragma once

#include <cstdint>
#include <vector>

#include "logfsk/types.hpp"

namespace logfsk {

/// Memoryless AWGN channel. Noise for a trial is a pure function of
/// (rng_seed, trial_index), so concurrent trial workers never share state.
struct AwgnChannel {
  double sigma2 = 0.0;        // noise power per sample
  std::uint64_t rng_seed = 0;
};

/// Real-valued flat fade with transmitter-side channel knowledge.
struct FlatFadingLink {
  double gain = 1.0;
  bool csi_known = true;
};

/// splitmix64-style derivation of an independent stream seed from a master
/// seed and up to two counters. Stable across platforms and build modes.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0);

/// Elementwise sum of symbol-synchronous frames. Throws on an empty list or
/// mismatched lengths.
VecX superpose(const std::vector<VecX>& frames);

/// frame + w, w iid N(0, sigma2); deterministic in (rng_seed, trial_index).
VecX add_awgn(Eigen::Ref<const VecX> frame, const AwgnChannel& channel,
              std::uint64_t trial_index);

/// Scales the frame by 1/gain so the fade cancels at the receiver. Refuses
/// blind operation (csi_known == false) and fades below `min_gain`, which
/// caps the transmit-power amplification.
VecX precompensate(Eigen::Ref<const VecX> frame, const FlatFadingLink& link,
                   double min_gain = 0.01);

/// The channel's own action on a frame, for closing the loop in tests.
VecX apply_fade(Eigen::Ref<const VecX> frame, const FlatFadingLink& link);

}  // namespace logfsk
