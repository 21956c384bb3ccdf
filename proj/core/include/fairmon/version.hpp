#pragma once

namespace fairmon {

inline constexpr char kVersion[] = "0.1.0";

}  // namespace fairmon
