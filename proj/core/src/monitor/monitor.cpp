#include "fairmon/monitor/monitor.hpp"

#include <algorithm>
#include <cmath>

namespace fairmon::monitor {

namespace {

using estimation::Interval;

int find_estimator(const std::vector<estimation::AtomEstimator>& estimators,
                   const bse::AtomicFunction& atom) {
  for (std::size_t i = 0; i < estimators.size(); ++i) {
    if (estimators[i].atom().same_structure(atom)) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

}  // namespace

Monitor::Monitor(const bse::SpecDocument& doc, MonitorOptions opts)
    : doc_(doc),
      delta_(opts.delta.value_or(doc.delta)),
      tau_mix_(opts.tau_mix.value_or(doc.tau_mix)),
      bound_(opts.bound) {
  if (!(delta_ > 0.0 && delta_ < 1.0)) {
    throw std::invalid_argument("delta must lie strictly between 0 and 1");
  }
  if (!(tau_mix_ > 0.0)) {
    throw std::invalid_argument("taumix must be positive");
  }
  for (const bse::AtomPtr& atom : doc_.unique_atoms()) {
    estimators_.emplace_back(atom);
  }
  per_atom_delta_ =
      estimators_.empty() ? delta_ : delta_ / static_cast<double>(estimators_.size());
  compile();
}

void Monitor::compile() {
  atom_values_.resize(estimators_.size());

  int max_depth = 0;
  int max_verdict_depth = 0;

  // Postorder emission; depth tracking sizes the evaluation stacks.
  auto emit_quant = [&](auto&& self, const bse::QuantExpr& e,
                        std::vector<Instr>& out, int depth) -> int {
    int max_d = depth + 1;
    switch (e.kind) {
      case bse::QuantExpr::Kind::Constant:
        out.push_back({Op::Const, -1, e.constant});
        break;
      case bse::QuantExpr::Kind::Atom:
        out.push_back({Op::Atom, find_estimator(estimators_, *e.atom), 0.0});
        break;
      case bse::QuantExpr::Kind::Add:
      case bse::QuantExpr::Kind::Mul: {
        max_d = std::max(self(self, *e.lhs, out, depth),
                         self(self, *e.rhs, out, depth + 1));
        out.push_back(
            {e.kind == bse::QuantExpr::Kind::Add ? Op::Add : Op::Mul, -1,
             0.0});
        break;
      }
      case bse::QuantExpr::Kind::Inv:
        max_d = self(self, *e.lhs, out, depth);
        out.push_back({Op::Inv, -1, 0.0});
        break;
    }
    return max_d;
  };

  auto emit_qual = [&](auto&& self, const bse::QualExpr& e,
                       std::vector<Instr>& out, int depth) -> int {
    int max_d = depth + 1;
    switch (e.kind) {
      case bse::QualExpr::Kind::True:
        out.push_back({Op::True, -1, 0.0});
        break;
      case bse::QualExpr::Kind::Geq0: {
        std::vector<Instr> operand;
        max_depth =
            std::max(max_depth, emit_quant(emit_quant, *e.quant, operand, 0));
        const int index = static_cast<int>(geq0_operands_.size());
        geq0_operands_.push_back(std::move(operand));
        out.push_back({Op::Geq0, index, 0.0});
        break;
      }
      case bse::QualExpr::Kind::Not:
        max_d = self(self, *e.lhs, out, depth);
        out.push_back({Op::Not, -1, 0.0});
        break;
      case bse::QualExpr::Kind::And:
        max_d = std::max(self(self, *e.lhs, out, depth),
                         self(self, *e.rhs, out, depth + 1));
        out.push_back({Op::And, -1, 0.0});
        break;
    }
    return max_d;
  };

  if (doc_.is_qual) {
    max_verdict_depth =
        emit_qual(emit_qual, *doc_.qual_root, qual_program_, 0);
    if (qual_program_.size() == 1 && qual_program_.back().op == Op::Geq0) {
      root_geq0_index_ = qual_program_.back().index;
    }
  } else {
    max_depth = emit_quant(emit_quant, *doc_.quant_root, quant_program_, 0);
  }

  value_stack_.resize(std::max(max_depth, 1));
  verdict_stack_.resize(std::max(max_verdict_depth, 1));
}

Monitor::NodeVal Monitor::eval_quant(const std::vector<Instr>& program) const {
  std::size_t sp = 0;
  for (const Instr& ins : program) {
    switch (ins.op) {
      case Op::Const:
        value_stack_[sp++] = {ins.constant, Interval::point(ins.constant)};
        break;
      case Op::Atom:
        value_stack_[sp++] = atom_values_[ins.index];
        break;
      case Op::Add: {
        --sp;
        NodeVal& a = value_stack_[sp - 1];
        const NodeVal& b = value_stack_[sp];
        a.point += b.point;
        a.interval = interval_add(a.interval, b.interval);
        break;
      }
      case Op::Mul: {
        --sp;
        NodeVal& a = value_stack_[sp - 1];
        const NodeVal& b = value_stack_[sp];
        a.point *= b.point;
        a.interval = interval_mul(a.interval, b.interval);
        break;
      }
      case Op::Inv: {
        NodeVal& a = value_stack_[sp - 1];
        a.point = 1.0 / a.point;
        a.interval = interval_inv(a.interval);
        break;
      }
      default:
        break;  // qualitative ops never appear in quantitative programs
    }
  }
  return value_stack_[0];
}

MonitorOutput Monitor::next(bse::Symbol symbol) {
  if (symbol < 0 || symbol >= doc_.alphabet.size()) {
    throw bse::UnknownTokenError("#" + std::to_string(symbol));
  }
  for (auto& est : estimators_) est.update(symbol);
  ++t_;
  return current();
}

MonitorOutput Monitor::next(std::string_view token) {
  return next(doc_.alphabet.require(token));
}

MonitorOutput Monitor::current() const {
  MonitorOutput out;
  out.t = t_;
  for (const auto& est : estimators_) {
    if (!est.warmed_up()) return out;
  }
  out.inconclusive = false;

  for (std::size_t i = 0; i < estimators_.size(); ++i) {
    const auto& est = estimators_[i];
    const auto& atom = est.atom();
    const double eps =
        estimation::pac_half_width(t_, est.arity(), {per_atom_delta_, tau_mix_},
                                   atom.range_width(), bound_);
    const double y = est.point();
    out.epsilon = std::max(out.epsilon, eps);
    atom_values_[i].point = y;
    atom_values_[i].interval = estimation::clamp_to_range(
        {y - eps, y + eps}, atom.lower(), atom.upper(), &out.anomaly);
  }

  if (!doc_.is_qual) {
    const NodeVal v = eval_quant(quant_program_);
    out.has_value = true;
    out.point = v.point;
    out.interval = v.interval;
    return out;
  }

  std::size_t sp = 0;
  for (const Instr& ins : qual_program_) {
    switch (ins.op) {
      case Op::True:
        verdict_stack_[sp++] = Verdict::True;
        break;
      case Op::Geq0: {
        const NodeVal v = eval_quant(geq0_operands_[ins.index]);
        Verdict verdict = Verdict::Unknown;
        if (v.interval.lo >= 0.0) {
          verdict = Verdict::True;
        } else if (v.interval.hi <= 0.0) {
          verdict = Verdict::False;
        }
        verdict_stack_[sp++] = verdict;
        break;
      }
      case Op::Not:
        verdict_stack_[sp - 1] = verdict_not(verdict_stack_[sp - 1]);
        break;
      case Op::And: {
        --sp;
        verdict_stack_[sp - 1] =
            verdict_and(verdict_stack_[sp - 1], verdict_stack_[sp]);
        break;
      }
      default:
        break;
    }
  }
  out.verdict = verdict_stack_[0];

  if (root_geq0_index_ >= 0) {
    const NodeVal v = eval_quant(geq0_operands_[root_geq0_index_]);
    out.has_value = true;
    out.point = v.point;
    out.interval = v.interval;
  }
  return out;
}

}  // namespace fairmon::monitor
