#pragma once

#include <string>
#include <string_view>

#include "fairmon/pomc/model.hpp"

namespace fairmon::pomc {

/// Parses the line-oriented model format: `states <k>`, `alphabet
/// <tok>...`, `t <from> <to> <prob>`, `l <state> <tok>`, optional `init
/// <state> <prob>` (omitted states get zero; no init lines at all means a
/// stationary start). `#` starts a comment. Indices are zero-based.
/// Errors carry the 1-based source line.
PomcModel load_model(std::string_view text);

/// Renders a model back into the same format. Probabilities print in the
/// shortest form that parses back to the identical double.
std::string print_model(const PomcModel& model);

}  // namespace fairmon::pomc
