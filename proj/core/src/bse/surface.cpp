#include "fairmon/bse/surface.hpp"

namespace fairmon::bse {

SurfacePtr SurfaceExpr::number_lit(double v) {
  auto n = std::make_shared<SurfaceExpr>();
  n->kind = Kind::Number;
  n->number = v;
  return n;
}

SurfacePtr SurfaceExpr::atom_ref(std::string name) {
  auto n = std::make_shared<SurfaceExpr>();
  n->kind = Kind::AtomRef;
  n->ident = std::move(name);
  return n;
}

SurfacePtr SurfaceExpr::seq_prob(std::vector<Word> success,
                                 std::vector<Word> given) {
  auto n = std::make_shared<SurfaceExpr>();
  n->kind = Kind::SeqProb;
  n->success_set = std::move(success);
  n->given_set = std::move(given);
  return n;
}

SurfacePtr SurfaceExpr::unary(Kind kind, SurfacePtr operand) {
  auto n = std::make_shared<SurfaceExpr>();
  n->kind = kind;
  n->lhs = std::move(operand);
  return n;
}

SurfacePtr SurfaceExpr::binary(Kind kind, SurfacePtr l, SurfacePtr r) {
  auto n = std::make_shared<SurfaceExpr>();
  n->kind = kind;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

SurfacePtr SurfaceExpr::boolean_true() {
  auto n = std::make_shared<SurfaceExpr>();
  n->kind = Kind::True;
  return n;
}

SurfacePtr SurfaceExpr::compare(SurfacePtr quant, CmpOp op, double constant) {
  auto n = std::make_shared<SurfaceExpr>();
  n->kind = Kind::Compare;
  n->cmp = op;
  n->lhs = std::move(quant);
  n->number = constant;
  return n;
}

bool structurally_equal(const SurfaceExpr& a, const SurfaceExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SurfaceExpr::Kind::Number:
      return a.number == b.number;
    case SurfaceExpr::Kind::AtomRef:
      return a.ident == b.ident;
    case SurfaceExpr::Kind::SeqProb:
      return a.success_set == b.success_set && a.given_set == b.given_set;
    case SurfaceExpr::Kind::True:
      return true;
    case SurfaceExpr::Kind::Neg:
    case SurfaceExpr::Kind::Inv:
    case SurfaceExpr::Kind::Not:
      return structurally_equal(*a.lhs, *b.lhs);
    case SurfaceExpr::Kind::Compare:
      return a.cmp == b.cmp && a.number == b.number &&
             structurally_equal(*a.lhs, *b.lhs);
    case SurfaceExpr::Kind::Add:
    case SurfaceExpr::Kind::Sub:
    case SurfaceExpr::Kind::Mul:
    case SurfaceExpr::Kind::Div:
    case SurfaceExpr::Kind::And:
    case SurfaceExpr::Kind::Or:
      return structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs);
  }
  return false;
}

}  // namespace fairmon::bse
