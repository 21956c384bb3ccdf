#pragma once

#include <cstdint>

namespace fairmon::estimation {

/// Parameters of the concentration bound: per-estimator failure probability
/// and the assumed mixing-time bound of the observation source.
struct PacParams {
  double delta = 0.0;    // in (0, 1)
  double tau_mix = 0.0;  // > 0
};

/// Which half-width formula to use. `Printed` is the default closed form
///   eps = w * sqrt( ln(2/delta) * t * min(t-n+1, n) * 9*tau / (2*(t-n+1)^2) )
/// and `Proof` squares the min(...) factor, the variant the concentration
/// argument itself yields. The two differ by exactly sqrt(min(t-n+1, n)).
enum class BoundKind { Printed, Proof };

/// PAC half-width after t observations for an estimator of window length n
/// over a value range of width `range_width`. Requires t >= n.
double pac_half_width(std::uint64_t t, int n, const PacParams& params,
                      double range_width, BoundKind kind = BoundKind::Printed);

}  // namespace fairmon::estimation
