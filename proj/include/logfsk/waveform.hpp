#pragma once

#include "logfsk/params.hpp"
#include "logfsk/types.hpp"

namespace logfsk {

/// DCT basis vector at discrete frequency m:
///   cos_m[n] = sqrt(2/N) * cos(pi * m * (2n+1) / (2N)),  n = 0..N-1.
/// The family is closed under pointwise products (the product of two basis
/// cosines splits exactly into the basis cosines at the sum and difference
/// indices), which is what places the AirComp peak on-grid at the sum.
VecX cosine_basis(Index m, Index n_samples);

/// Log-FSK symbol for message m: A_c * log(B_c * cos_m[n] + alpha),
/// optionally mean-removed. Mean square equals a_bar_c^2 exactly when
/// params.log_power was computed for this same m and subtract_mean is off.
VecX modulate(Index m, const LogFskParams& params);

}  // namespace logfsk
