#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fairmon/bse/spec.hpp"
#include "fairmon/estimation/estimator.hpp"
#include "fairmon/estimation/interval.hpp"
#include "fairmon/estimation/pac.hpp"
#include "fairmon/monitor/verdict.hpp"

namespace fairmon::monitor {

/// Raised by Monitor::restore on version mismatch or corrupt payload.
class SnapshotError : public std::runtime_error {
 public:
  explicit SnapshotError(const std::string& message)
      : std::runtime_error(message) {}
};

struct MonitorOptions {
  std::optional<double> delta;    // overrides the document's delta
  std::optional<double> tau_mix;  // overrides the document's taumix
  estimation::BoundKind bound = estimation::BoundKind::Printed;
};

/// One monitor step's worth of output.
struct MonitorOutput {
  std::uint64_t t = 0;

  /// True while any atom's window is still filling; no other field except t
  /// is meaningful then.
  bool inconclusive = true;

  /// Point/interval fields are set for quantitative roots and for
  /// qualitative roots of the form `expr >= 0` (whose operand value is
  /// reported alongside the verdict).
  bool has_value = false;
  double point = 0.0;
  estimation::Interval interval;

  /// Largest per-atom PAC half-width at this step, before range clamping.
  double epsilon = 0.0;

  /// Some composed interval had an empty intersection with its range.
  bool anomaly = false;

  /// Set for qualitative roots once warmed up.
  std::optional<Verdict> verdict;
};

/// Streaming monitor for one specification document: one shared estimator
/// per structurally distinct atom, the failure probability split equally
/// across them, intervals composed bottom-up per event. Updates are O(spec
/// size) per event, independent of stream length, and allocation-free.
class Monitor {
 public:
  explicit Monitor(const bse::SpecDocument& doc, MonitorOptions opts = {});

  const bse::SpecDocument& doc() const { return doc_; }
  double delta() const { return delta_; }
  double tau_mix() const { return tau_mix_; }
  estimation::BoundKind bound() const { return bound_; }
  std::uint64_t event_count() const { return t_; }

  /// Unique atoms actually monitored (after structural deduplication).
  int atom_count() const { return static_cast<int>(estimators_.size()); }
  double per_atom_delta() const { return per_atom_delta_; }
  const estimation::AtomEstimator& estimator(int i) const {
    return estimators_[i];
  }

  MonitorOutput next(bse::Symbol symbol);
  MonitorOutput next(std::string_view token);  // resolved via the alphabet

  /// Output for the current state without consuming an observation.
  MonitorOutput current() const;

  /// Self-contained JSON state: embeds the canonical document text plus all
  /// estimator registers (doubles as hex floats, so restore is bit-exact).
  std::string snapshot() const;
  static Monitor restore(std::string_view snapshot_json);

 private:
  enum class Op : std::uint8_t { Const, Atom, Add, Mul, Inv, True, Geq0, Not, And };

  struct Instr {
    Op op;
    int index = -1;        // Atom: estimator slot; Geq0: operand program
    double constant = 0.0; // Const payload
  };

  struct NodeVal {
    double point = 0.0;
    estimation::Interval interval;
  };

  void compile();
  NodeVal eval_quant(const std::vector<Instr>& program) const;

  bse::SpecDocument doc_;
  double delta_;
  double tau_mix_;
  estimation::BoundKind bound_;
  double per_atom_delta_ = 0.0;

  std::vector<estimation::AtomEstimator> estimators_;
  std::vector<Instr> quant_program_;               // quantitative roots
  std::vector<Instr> qual_program_;                // qualitative roots
  std::vector<std::vector<Instr>> geq0_operands_;  // per Geq0 node
  int root_geq0_index_ = -1;  // when the qualitative root is a Geq0

  std::uint64_t t_ = 0;

  // Per-event scratch, preallocated.
  mutable std::vector<NodeVal> atom_values_;
  mutable std::vector<NodeVal> value_stack_;
  mutable std::vector<Verdict> verdict_stack_;
};

}  // namespace fairmon::monitor
