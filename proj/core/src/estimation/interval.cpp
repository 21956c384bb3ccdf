#include "fairmon/estimation/interval.hpp"

#include <algorithm>
#include <cmath>

namespace fairmon::estimation {

bool Interval::bounded() const {
  return std::isfinite(lo) && std::isfinite(hi);
}

Interval interval_add(const Interval& x, const Interval& y) {
  return {x.lo + y.lo, x.hi + y.hi};
}

namespace {

double product(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

}  // namespace

Interval interval_mul(const Interval& x, const Interval& y) {
  const double p1 = product(x.lo, y.lo);
  const double p2 = product(x.lo, y.hi);
  const double p3 = product(x.hi, y.lo);
  const double p4 = product(x.hi, y.hi);
  return {std::min(std::min(p1, p2), std::min(p3, p4)),
          std::max(std::max(p1, p2), std::max(p3, p4))};
}

Interval interval_inv(const Interval& x) {
  if (x.lo <= 0.0 && x.hi >= 0.0) return Interval::unbounded();
  return {1.0 / x.hi, 1.0 / x.lo};
}

Interval clamp_to_range(const Interval& x, double a, double b,
                        bool* anomaly) {
  if (x.hi < a) {
    if (anomaly) *anomaly = true;
    return Interval::point(a);
  }
  if (x.lo > b) {
    if (anomaly) *anomaly = true;
    return Interval::point(b);
  }
  return {std::max(x.lo, a), std::min(x.hi, b)};
}

}  // namespace fairmon::estimation
