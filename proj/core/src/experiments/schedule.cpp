#include "fairmon/experiments/schedule.hpp"

#include <cmath>

namespace fairmon::experiments {

std::vector<std::uint64_t> checkpoint_schedule_between(std::uint64_t from,
                                                       std::uint64_t to) {
  std::vector<std::uint64_t> out;
  if (to <= from) return out;
  double x = from == 0 ? 1.0 : static_cast<double>(from) * 1.3;
  std::uint64_t last = from;
  while (true) {
    std::uint64_t t = static_cast<std::uint64_t>(std::llround(std::floor(x)));
    if (t <= last) t = last + 1;
    if (t >= to) break;
    out.push_back(t);
    last = t;
    x = static_cast<double>(t) * 1.3;
  }
  out.push_back(to);
  return out;
}

std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t length) {
  return checkpoint_schedule_between(0, length);
}

}  // namespace fairmon::experiments
