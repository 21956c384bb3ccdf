#pragma once

#include <limits>

namespace fairmon::estimation {

/// A closed real interval, possibly unbounded on either side.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  static Interval unbounded() {
    return {-std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
  }

  bool bounded() const;
  bool contains(double v) const { return lo <= v && v <= hi; }
  double width() const { return hi - lo; }
  double half_width() const { return (hi - lo) / 2.0; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

Interval interval_add(const Interval& x, const Interval& y);

/// Endpoint-product rule with the convention 0 * inf = 0, which keeps
/// products of bounded-by-zero and unbounded intervals sound.
Interval interval_mul(const Interval& x, const Interval& y);

/// [1/hi, 1/lo] when 0 lies outside the interval; the unbounded interval
/// otherwise (a zero-straddling divisor carries no information).
Interval interval_inv(const Interval& x);

/// Intersects x with [a, b]. An empty intersection collapses to the nearest
/// boundary point of [a, b] and sets *anomaly; a non-empty one leaves
/// *anomaly untouched.
Interval clamp_to_range(const Interval& x, double a, double b,
                        bool* anomaly = nullptr);

}  // namespace fairmon::estimation
