#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fairmon/bse/ast.hpp"
#include "fairmon/pomc/model.hpp"

namespace fairmon::pomc {

/// Raised when exact semantics are unavailable (state-space guard hit, or
/// division by an exactly zero denominator).
class OracleError : public std::runtime_error {
 public:
  explicit OracleError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Exact expected value of f over length-n observation windows when the
/// chain starts from `initial` (stationarity makes it time-invariant).
/// Dynamic programming over observation-word prefixes with per-state mass
/// vectors; zero-mass prefixes are pruned. Guard: state_count^arity <= 1e8.
double exact_atom_semantics(const PomcModel& model,
                            const std::vector<double>& initial,
                            const bse::AtomicFunction& atom);

/// Exact semantics of composed expressions by arithmetic over atom
/// semantics. Division by exact zero raises OracleError.
double exact_expr_semantics(const PomcModel& model,
                            const std::vector<double>& initial,
                            const bse::QuantExpr& expr);

/// Exact boolean semantics: expr >= 0 on the quantitative value, with
/// classical negation/conjunction.
bool exact_qual_semantics(const PomcModel& model,
                          const std::vector<double>& initial,
                          const bse::QualExpr& expr);

/// Brute-force cross-check: sums the path measure over every length-n
/// state sequence. Exponential; for tests on tiny models only.
double enumerate_atom_semantics(const PomcModel& model,
                                const std::vector<double>& initial,
                                const bse::AtomicFunction& atom);

}  // namespace fairmon::pomc
