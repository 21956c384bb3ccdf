#pragma once

#include <cstdint>
#include <vector>

namespace fairmon::experiments {

/// Strictly increasing checkpoint times: successive values grow by ~1.3x
/// (always by at least one), starting at 1 and always ending at `length`.
std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t length);

/// Same growth rule continued on (from, to]; used for projections past the
/// simulated horizon.
std::vector<std::uint64_t> checkpoint_schedule_between(std::uint64_t from,
                                                       std::uint64_t to);

}  // namespace fairmon::experiments
