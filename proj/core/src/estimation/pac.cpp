#include "fairmon/estimation/pac.hpp"

#include <cmath>
#include <stdexcept>

namespace fairmon::estimation {

double pac_half_width(std::uint64_t t, int n, const PacParams& params,
                      double range_width, BoundKind kind) {
  if (n < 1) throw std::domain_error("window length must be positive");
  if (t < static_cast<std::uint64_t>(n)) {
    throw std::domain_error("half-width undefined before the window fills");
  }
  const double T = static_cast<double>(t);
  const double N = T - n + 1;  // number of complete windows
  const double m = std::min(N, static_cast<double>(n));
  const double log_term = std::log(2.0 / params.delta);
  const double min_factor = kind == BoundKind::Proof ? m * m : m;
  return range_width *
         std::sqrt(log_term * T * min_factor * 9.0 * params.tau_mix /
                   (2.0 * N * N));
}

}  // namespace fairmon::estimation
