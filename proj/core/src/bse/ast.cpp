#include "fairmon/bse/ast.hpp"

#include <algorithm>
#include <cassert>

namespace fairmon::bse {

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (Symbol s = 0; s < static_cast<Symbol>(tokens_.size()); ++s) {
    index_.emplace(tokens_[s], s);
  }
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::require(std::string_view token) const {
  auto s = find(token);
  if (!s) throw UnknownTokenError(token);
  return *s;
}

AtomicFunction::AtomicFunction(std::string name, int arity, double lower,
                               double upper, std::vector<TableEntry> entries,
                               double default_value)
    : name_(std::move(name)),
      arity_(arity),
      lower_(lower),
      upper_(upper),
      entries_(std::move(entries)),
      default_value_(default_value) {
  assert(arity_ >= 1);
  assert(lower_ < upper_);
}

double AtomicFunction::eval(std::span<const Symbol> window) const {
  assert(static_cast<int>(window.size()) == arity_);
  double best = default_value_;
  int best_specificity = -1;
  for (const TableEntry& e : entries_) {
    int specificity = 0;
    bool match = true;
    for (int i = 0; i < arity_; ++i) {
      if (e.pattern[i] == kWildcard) continue;
      if (e.pattern[i] != window[i]) {
        match = false;
        break;
      }
      ++specificity;
    }
    // Strict inequality keeps the earliest declared entry among ties.
    if (match && specificity > best_specificity) {
      best = e.value;
      best_specificity = specificity;
    }
  }
  return best;
}

bool AtomicFunction::same_structure(const AtomicFunction& other) const {
  return arity_ == other.arity_ && lower_ == other.lower_ &&
         upper_ == other.upper_ && default_value_ == other.default_value_ &&
         entries_ == other.entries_;
}

QuantPtr QuantExpr::make_constant(double v) {
  auto n = std::make_shared<QuantExpr>();
  n->kind = Kind::Constant;
  n->constant = v;
  return n;
}

QuantPtr QuantExpr::make_atom(AtomPtr atom) {
  auto n = std::make_shared<QuantExpr>();
  n->kind = Kind::Atom;
  n->atom = std::move(atom);
  return n;
}

QuantPtr QuantExpr::make_add(QuantPtr l, QuantPtr r) {
  auto n = std::make_shared<QuantExpr>();
  n->kind = Kind::Add;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

QuantPtr QuantExpr::make_mul(QuantPtr l, QuantPtr r) {
  auto n = std::make_shared<QuantExpr>();
  n->kind = Kind::Mul;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

QuantPtr QuantExpr::make_inv(QuantPtr x) {
  auto n = std::make_shared<QuantExpr>();
  n->kind = Kind::Inv;
  n->lhs = std::move(x);
  return n;
}

QualPtr QualExpr::make_true() {
  auto n = std::make_shared<QualExpr>();
  n->kind = Kind::True;
  return n;
}

QualPtr QualExpr::make_geq0(QuantPtr q) {
  auto n = std::make_shared<QualExpr>();
  n->kind = Kind::Geq0;
  n->quant = std::move(q);
  return n;
}

QualPtr QualExpr::make_not(QualPtr x) {
  auto n = std::make_shared<QualExpr>();
  n->kind = Kind::Not;
  n->lhs = std::move(x);
  return n;
}

QualPtr QualExpr::make_and(QualPtr l, QualPtr r) {
  auto n = std::make_shared<QualExpr>();
  n->kind = Kind::And;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

bool structurally_equal(const QuantExpr& a, const QuantExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case QuantExpr::Kind::Constant:
      return a.constant == b.constant;
    case QuantExpr::Kind::Atom:
      return a.atom->same_structure(*b.atom);
    case QuantExpr::Kind::Add:
    case QuantExpr::Kind::Mul:
      return structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs);
    case QuantExpr::Kind::Inv:
      return structurally_equal(*a.lhs, *b.lhs);
  }
  return false;
}

bool structurally_equal(const QualExpr& a, const QualExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case QualExpr::Kind::True:
      return true;
    case QualExpr::Kind::Geq0:
      return structurally_equal(*a.quant, *b.quant);
    case QualExpr::Kind::Not:
      return structurally_equal(*a.lhs, *b.lhs);
    case QualExpr::Kind::And:
      return structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs);
  }
  return false;
}

namespace {

void push_unique(std::vector<AtomPtr>& out, const AtomPtr& atom) {
  for (const AtomPtr& seen : out) {
    if (seen->same_structure(*atom)) return;
  }
  out.push_back(atom);
}

void collect(const QuantExpr& e, std::vector<AtomPtr>& out) {
  switch (e.kind) {
    case QuantExpr::Kind::Constant:
      return;
    case QuantExpr::Kind::Atom:
      push_unique(out, e.atom);
      return;
    case QuantExpr::Kind::Add:
    case QuantExpr::Kind::Mul:
      collect(*e.lhs, out);
      collect(*e.rhs, out);
      return;
    case QuantExpr::Kind::Inv:
      collect(*e.lhs, out);
      return;
  }
}

void collect(const QualExpr& e, std::vector<AtomPtr>& out) {
  switch (e.kind) {
    case QualExpr::Kind::True:
      return;
    case QualExpr::Kind::Geq0:
      collect(*e.quant, out);
      return;
    case QualExpr::Kind::Not:
      collect(*e.lhs, out);
      return;
    case QualExpr::Kind::And:
      collect(*e.lhs, out);
      collect(*e.rhs, out);
      return;
  }
}

}  // namespace

std::vector<AtomPtr> collect_atoms(const QuantExpr& root) {
  std::vector<AtomPtr> out;
  collect(root, out);
  return out;
}

std::vector<AtomPtr> collect_atoms(const QualExpr& root) {
  std::vector<AtomPtr> out;
  collect(root, out);
  return out;
}

}  // namespace fairmon::bse
