#pragma once

#include <string>

namespace fairmon::util {

/// Shortest decimal form that parses back to exactly the same double.
/// Infinities render as "inf"/"-inf", NaN as "nan".
std::string format_double(double v);

}  // namespace fairmon::util
