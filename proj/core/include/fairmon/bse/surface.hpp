#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fairmon/bse/ast.hpp"

namespace fairmon::bse {

struct SurfaceExpr;
using SurfacePtr = std::shared_ptr<const SurfaceExpr>;

/// Expression tree as written in a spec file, before sugar expansion.
/// Quantitative and qualitative node kinds share one type; the parser
/// guarantees each tree is well-sorted for its section.
struct SurfaceExpr {
  enum class Kind {
    // quantitative
    Number,
    AtomRef,
    SeqProb,  // P(S) or P(S | T) over quoted observation words
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    // qualitative
    True,
    Compare,  // quant `cmp` numeric constant
    Not,
    And,
    Or,
  };

  enum class CmpOp { Ge, Le, Eq, Gt, Lt };

  Kind kind;
  double number = 0.0;            // Number payload; Compare right-hand constant
  std::string ident;              // AtomRef name
  std::vector<Word> success_set;  // SeqProb S
  std::vector<Word> given_set;    // SeqProb T; empty means unconditional
  CmpOp cmp = CmpOp::Ge;
  SurfacePtr lhs, rhs;            // binary children; unary nodes use lhs

  static SurfacePtr number_lit(double v);
  static SurfacePtr atom_ref(std::string name);
  static SurfacePtr seq_prob(std::vector<Word> s, std::vector<Word> t);
  static SurfacePtr unary(Kind k, SurfacePtr x);
  static SurfacePtr binary(Kind k, SurfacePtr l, SurfacePtr r);
  static SurfacePtr boolean_true();
  static SurfacePtr compare(SurfacePtr quant, CmpOp op, double constant);
};

bool structurally_equal(const SurfaceExpr& a, const SurfaceExpr& b);

}  // namespace fairmon::bse
