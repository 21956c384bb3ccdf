#include "fairmon/pomc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace fairmon::pomc {

namespace {

void check_guard(const PomcModel& model, int arity) {
  if (std::pow(static_cast<double>(model.state_count), arity) > 1e8) {
    throw OracleError(
        "exact semantics guard exceeded: state_count^arity > 1e8");
  }
}

}  // namespace

double exact_atom_semantics(const PomcModel& model,
                            const std::vector<double>& initial,
                            const bse::AtomicFunction& atom) {
  check_guard(model, atom.arity());
  const int n = atom.arity();
  const int states = model.state_count;

  bse::Word word(n, 0);
  // alpha[q] = P(observation prefix so far, current state = q).
  std::vector<std::vector<double>> alpha(n + 1,
                                         std::vector<double>(states, 0.0));
  double total = 0.0;

  std::function<void(int)> recurse = [&](int depth) {
    if (depth == n) {
      double mass = 0.0;
      for (double a : alpha[n]) mass += a;
      if (mass > 0.0) total += atom.eval(word) * mass;
      return;
    }
    for (bse::Symbol sigma = 0; sigma < model.alphabet.size(); ++sigma) {
      auto& next = alpha[depth + 1];
      std::fill(next.begin(), next.end(), 0.0);
      bool any = false;
      if (depth == 0) {
        for (int q = 0; q < states; ++q) {
          if (model.labels[q] == sigma && initial[q] > 0.0) {
            next[q] = initial[q];
            any = true;
          }
        }
      } else {
        const auto& cur = alpha[depth];
        for (int q = 0; q < states; ++q) {
          if (cur[q] == 0.0) continue;
          for (const auto& [to, p] : model.rows[q]) {
            if (model.labels[to] == sigma && p > 0.0) {
              next[to] += cur[q] * p;
              any = true;
            }
          }
        }
      }
      if (!any) continue;
      word[depth] = sigma;
      recurse(depth + 1);
    }
  };
  recurse(0);
  return total;
}

double enumerate_atom_semantics(const PomcModel& model,
                                const std::vector<double>& initial,
                                const bse::AtomicFunction& atom) {
  check_guard(model, atom.arity());
  const int n = atom.arity();
  bse::Word word(n, 0);
  std::vector<int> path(n, 0);
  double total = 0.0;

  std::function<void(int, double)> recurse = [&](int depth, double mass) {
    if (mass == 0.0) return;
    if (depth == n) {
      total += atom.eval(word) * mass;
      return;
    }
    if (depth == 0) {
      for (int q = 0; q < model.state_count; ++q) {
        path[0] = q;
        word[0] = model.labels[q];
        recurse(1, initial[q]);
      }
    } else {
      for (const auto& [to, p] : model.rows[path[depth - 1]]) {
        path[depth] = to;
        word[depth] = model.labels[to];
        recurse(depth + 1, mass * p);
      }
    }
  };
  recurse(0, 1.0);
  return total;
}

namespace {

double eval_expr(const PomcModel& model, const std::vector<double>& initial,
                 const bse::QuantExpr& expr,
                 std::vector<std::pair<const bse::AtomicFunction*, double>>&
                     atom_cache) {
  switch (expr.kind) {
    case bse::QuantExpr::Kind::Constant:
      return expr.constant;
    case bse::QuantExpr::Kind::Atom: {
      for (const auto& [atom, value] : atom_cache) {
        if (atom->same_structure(*expr.atom)) return value;
      }
      const double value = exact_atom_semantics(model, initial, *expr.atom);
      atom_cache.emplace_back(expr.atom.get(), value);
      return value;
    }
    case bse::QuantExpr::Kind::Add:
      return eval_expr(model, initial, *expr.lhs, atom_cache) +
             eval_expr(model, initial, *expr.rhs, atom_cache);
    case bse::QuantExpr::Kind::Mul:
      return eval_expr(model, initial, *expr.lhs, atom_cache) *
             eval_expr(model, initial, *expr.rhs, atom_cache);
    case bse::QuantExpr::Kind::Inv: {
      const double v = eval_expr(model, initial, *expr.lhs, atom_cache);
      if (v == 0.0) {
        throw OracleError("exact semantics undefined: division by zero");
      }
      return 1.0 / v;
    }
  }
  throw OracleError("unreachable expression kind");
}

}  // namespace

double exact_expr_semantics(const PomcModel& model,
                            const std::vector<double>& initial,
                            const bse::QuantExpr& expr) {
  std::vector<std::pair<const bse::AtomicFunction*, double>> cache;
  return eval_expr(model, initial, expr, cache);
}

bool exact_qual_semantics(const PomcModel& model,
                          const std::vector<double>& initial,
                          const bse::QualExpr& expr) {
  switch (expr.kind) {
    case bse::QualExpr::Kind::True:
      return true;
    case bse::QualExpr::Kind::Geq0:
      return exact_expr_semantics(model, initial, *expr.quant) >= 0.0;
    case bse::QualExpr::Kind::Not:
      return !exact_qual_semantics(model, initial, *expr.lhs);
    case bse::QualExpr::Kind::And:
      return exact_qual_semantics(model, initial, *expr.lhs) &&
             exact_qual_semantics(model, initial, *expr.rhs);
  }
  return false;
}

}  // namespace fairmon::pomc
