#include "logfsk/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace logfsk {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) {
  std::uint64_t state = master;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ (a + 0x9e3779b97f4a7c15ULL);
  mixed = splitmix64(state);
  state = mixed ^ (b + 0xbf58476d1ce4e5b9ULL);
  return splitmix64(state);
}

VecX superpose(const std::vector<VecX>& frames) {
  if (frames.empty()) {
    throw std::invalid_argument("superpose requires at least one frame");
  }
  VecX sum = frames.front();
  for (std::size_t k = 1; k < frames.size(); ++k) {
    if (frames[k].size() != sum.size()) {
      throw std::invalid_argument("superpose: frame length mismatch");
    }
    sum += frames[k];
  }
  return sum;
}

VecX add_awgn(Eigen::Ref<const VecX> frame, const AwgnChannel& channel,
              std::uint64_t trial_index) {
  if (channel.sigma2 < 0.0) {
    throw std::domain_error("noise power must be non-negative");
  }
  if (channel.sigma2 == 0.0) return frame;
  std::mt19937_64 gen(derive_stream_seed(channel.rng_seed, trial_index));
  std::normal_distribution<double> gauss(0.0, std::sqrt(channel.sigma2));
  VecX out(frame.size());
  for (Index n = 0; n < frame.size(); ++n) out[n] = frame[n] + gauss(gen);
  return out;
}

VecX precompensate(Eigen::Ref<const VecX> frame, const FlatFadingLink& link,
                   double min_gain) {
  if (!link.csi_known) {
    throw std::logic_error("precompensation requires channel knowledge; "
                           "no blind mode is available");
  }
  if (!(std::abs(link.gain) >= min_gain)) {
    throw std::domain_error("fade gain " + std::to_string(link.gain) +
                            " below inversion floor " + std::to_string(min_gain) +
                            "; refusing unbounded transmit power");
  }
  return frame / link.gain;
}

VecX apply_fade(Eigen::Ref<const VecX> frame, const FlatFadingLink& link) {
  return link.gain * frame;
}

}  // namespace logfsk
