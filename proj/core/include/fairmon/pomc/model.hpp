#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fairmon/bse/ast.hpp"

namespace fairmon::pomc {

/// Error in a model description (structure or file syntax). Line is
/// 1-based, 0 when no source position applies.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? message + " (line " +
                                          std::to_string(line) + ")"
                                    : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// A finite labelled Markov chain: row-stochastic transitions kept sparse,
/// one observation per state, and an optional explicit initial
/// distribution (absent means: start stationary).
struct PomcModel {
  int state_count = 0;
  bse::Alphabet alphabet;
  std::vector<std::vector<std::pair<int, double>>> rows;  // (to, prob), sorted
  std::vector<bse::Symbol> labels;                        // state -> observation
  std::vector<double> init;                               // empty or size state_count

  double prob(int from, int to) const;

  /// Structural checks: row sums within 1e-12 of one, probabilities in
  /// [0,1], every state labelled, init (when present) a distribution.
  void check() const;
};

/// Copy of the model with observations re-indexed against `target` (matched
/// by token text), so windows can be fed to atoms declared over that
/// alphabet. Throws UnknownTokenError when a used label has no match.
PomcModel relabel_to(const PomcModel& model, const bse::Alphabet& target);

}  // namespace fairmon::pomc
