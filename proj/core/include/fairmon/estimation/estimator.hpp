#pragma once

#include <cstdint>
#include <vector>

#include "fairmon/bse/ast.hpp"

namespace fairmon::estimation {

/// Streaming point estimator of one atomic function: keeps the last n
/// observations in a ring buffer and the running average of the window
/// values over all complete windows seen so far. O(n) space, O(n + table)
/// time per update, no allocation after construction.
class AtomEstimator {
 public:
  explicit AtomEstimator(bse::AtomPtr atom);

  const bse::AtomicFunction& atom() const { return *atom_; }
  int arity() const { return arity_; }

  /// Observations consumed so far.
  std::uint64_t count() const { return count_; }

  /// True once at least one complete window has been seen (count >= arity).
  bool warmed_up() const {
    return count_ >= static_cast<std::uint64_t>(arity_);
  }

  /// Running average of the window values; meaningful only when warmed up.
  double point() const { return value_; }

  void update(bse::Symbol symbol);
  void reset();

  /// Window contents oldest-first (for persistence); size min(count, arity).
  std::vector<bse::Symbol> window_contents() const;

  /// Restores count/value/window exactly as captured by the accessors.
  void restore(std::uint64_t count, double value,
               const std::vector<bse::Symbol>& window);

 private:
  bse::AtomPtr atom_;
  int arity_;
  std::uint64_t count_ = 0;
  double value_ = 0.0;
  std::vector<bse::Symbol> ring_;     // size arity_, write position count_ % arity_
  std::vector<bse::Symbol> scratch_;  // linearized window for evaluation
};

}  // namespace fairmon::estimation
