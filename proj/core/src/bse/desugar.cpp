#include "fairmon/bse/desugar.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace fairmon::bse {

namespace {

std::size_t max_word_length(const std::vector<Word>& words) {
  std::size_t n = 0;
  for (const Word& w : words) n = std::max(n, w.size());
  return n;
}

std::string render_word_set(const std::vector<Word>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += '+';
    for (std::size_t j = 0; j < words[i].size(); ++j) {
      if (j > 0) out += '.';
      out += std::to_string(words[i][j]);
    }
  }
  return out;
}

// Indicator of windows whose prefix is some word of `words`, padded with
// trailing wildcards up to `arity`.
AtomPtr make_indicator_atom(std::vector<Word> words, int arity) {
  assert(!words.empty());
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  assert(max_word_length(words) <= static_cast<std::size_t>(arity));

  std::vector<TableEntry> entries;
  entries.reserve(words.size());
  for (const Word& w : words) {
    assert(!w.empty());
    Word pattern = w;
    pattern.resize(arity, kWildcard);
    entries.push_back(TableEntry{std::move(pattern), 1.0});
  }
  std::string name =
      "p" + std::to_string(arity) + "{" + render_word_set(words) + "}";
  return std::make_shared<AtomicFunction>(std::move(name), arity, 0.0, 1.0,
                                          std::move(entries), 0.0);
}

// Reuses a structurally identical atom already in `registry`, otherwise
// appends `atom`.
AtomPtr intern_atom(std::vector<AtomPtr>& registry, AtomPtr atom) {
  for (const AtomPtr& seen : registry) {
    if (seen->same_structure(*atom)) return seen;
  }
  registry.push_back(atom);
  return atom;
}

}  // namespace

AtomPtr make_sequence_prob_atom(const std::vector<Word>& s, std::string name) {
  AtomPtr atom =
      make_indicator_atom(s, static_cast<int>(max_word_length(s)));
  if (!name.empty()) {
    atom = std::make_shared<AtomicFunction>(
        std::move(name), atom->arity(), atom->lower(), atom->upper(),
        atom->entries(), atom->default_value());
  }
  return atom;
}

QuantPtr make_conditional_expr(const std::vector<Word>& s,
                               const std::vector<Word>& t,
                               std::vector<AtomPtr>& registry) {
  assert(!s.empty() && !t.empty());
  const int arity =
      static_cast<int>(max_word_length(t) + max_word_length(s));

  std::vector<Word> joint;
  joint.reserve(t.size() * s.size());
  for (const Word& tw : t) {
    for (const Word& sw : s) {
      Word w = tw;
      w.insert(w.end(), sw.begin(), sw.end());
      joint.push_back(std::move(w));
    }
  }

  AtomPtr numerator = intern_atom(registry, make_indicator_atom(joint, arity));
  AtomPtr denominator = intern_atom(registry, make_indicator_atom(t, arity));
  return QuantExpr::make_mul(QuantExpr::make_atom(numerator),
                             QuantExpr::make_inv(QuantExpr::make_atom(denominator)));
}

namespace {

using Kind = SurfaceExpr::Kind;
using CmpOp = SurfaceExpr::CmpOp;

SurfacePtr negate(SurfacePtr x) {
  return SurfaceExpr::binary(Kind::Mul, SurfaceExpr::number_lit(-1.0),
                             std::move(x));
}

// (q - c) >= 0, with the subtraction elided when the bound is literal zero.
SurfacePtr geq_bound(SurfacePtr q, double c) {
  if (c == 0.0) return SurfaceExpr::compare(std::move(q), CmpOp::Ge, 0.0);
  SurfacePtr shifted = SurfaceExpr::binary(
      Kind::Add, std::move(q), negate(SurfaceExpr::number_lit(c)));
  return SurfaceExpr::compare(std::move(shifted), CmpOp::Ge, 0.0);
}

// (-q + c) >= 0, i.e. q <= c.
SurfacePtr leq_bound(SurfacePtr q, double c) {
  SurfacePtr neg = negate(std::move(q));
  if (c == 0.0) return SurfaceExpr::compare(std::move(neg), CmpOp::Ge, 0.0);
  SurfacePtr shifted = SurfaceExpr::binary(Kind::Add, std::move(neg),
                                           SurfaceExpr::number_lit(c));
  return SurfaceExpr::compare(std::move(shifted), CmpOp::Ge, 0.0);
}

}  // namespace

SurfacePtr expand_sugar(const SurfacePtr& e) {
  switch (e->kind) {
    case Kind::Number:
    case Kind::AtomRef:
    case Kind::SeqProb:
    case Kind::True:
      return e;
    case Kind::Add:
      return SurfaceExpr::binary(Kind::Add, expand_sugar(e->lhs),
                                 expand_sugar(e->rhs));
    case Kind::Mul:
      return SurfaceExpr::binary(Kind::Mul, expand_sugar(e->lhs),
                                 expand_sugar(e->rhs));
    case Kind::Sub:
      return SurfaceExpr::binary(Kind::Add, expand_sugar(e->lhs),
                                 negate(expand_sugar(e->rhs)));
    case Kind::Div:
      return SurfaceExpr::binary(
          Kind::Mul, expand_sugar(e->lhs),
          SurfaceExpr::unary(Kind::Inv, expand_sugar(e->rhs)));
    case Kind::Neg:
      return negate(expand_sugar(e->lhs));
    case Kind::Inv:
      return SurfaceExpr::unary(Kind::Inv, expand_sugar(e->lhs));
    case Kind::Not:
      return SurfaceExpr::unary(Kind::Not, expand_sugar(e->lhs));
    case Kind::And:
      return SurfaceExpr::binary(Kind::And, expand_sugar(e->lhs),
                                 expand_sugar(e->rhs));
    case Kind::Or:
      return SurfaceExpr::unary(
          Kind::Not,
          SurfaceExpr::binary(
              Kind::And, SurfaceExpr::unary(Kind::Not, expand_sugar(e->lhs)),
              SurfaceExpr::unary(Kind::Not, expand_sugar(e->rhs))));
    case Kind::Compare: {
      SurfacePtr q = expand_sugar(e->lhs);
      switch (e->cmp) {
        case CmpOp::Ge:
          return geq_bound(std::move(q), e->number);
        case CmpOp::Le:
          return leq_bound(std::move(q), e->number);
        case CmpOp::Eq:
          return SurfaceExpr::binary(Kind::And, geq_bound(q, e->number),
                                     leq_bound(q, e->number));
        case CmpOp::Gt:
          return SurfaceExpr::unary(Kind::Not, leq_bound(std::move(q), e->number));
        case CmpOp::Lt:
          return SurfaceExpr::unary(Kind::Not, geq_bound(std::move(q), e->number));
      }
      break;
    }
  }
  throw SpecError("internal error: unhandled surface node in expand_sugar");
}

QuantPtr lower_quant(const SurfacePtr& e, const std::vector<AtomPtr>& declared,
                     std::vector<AtomPtr>& registry) {
  switch (e->kind) {
    case Kind::Number:
      return QuantExpr::make_constant(e->number);
    case Kind::AtomRef: {
      for (const AtomPtr& atom : declared) {
        if (atom->name() == e->ident) return QuantExpr::make_atom(atom);
      }
      throw SpecError("unknown atom '" + e->ident + "'");
    }
    case Kind::SeqProb:
      if (e->given_set.empty()) {
        return QuantExpr::make_atom(intern_atom(
            registry,
            make_indicator_atom(
                e->success_set,
                static_cast<int>(max_word_length(e->success_set)))));
      }
      return make_conditional_expr(e->success_set, e->given_set, registry);
    case Kind::Add:
      return QuantExpr::make_add(lower_quant(e->lhs, declared, registry),
                                 lower_quant(e->rhs, declared, registry));
    case Kind::Mul:
      return QuantExpr::make_mul(lower_quant(e->lhs, declared, registry),
                                 lower_quant(e->rhs, declared, registry));
    case Kind::Inv:
      return QuantExpr::make_inv(lower_quant(e->lhs, declared, registry));
    default:
      throw SpecError(
          "internal error: sugar survived expansion in a quantitative "
          "expression");
  }
}

QualPtr lower_qual(const SurfacePtr& e, const std::vector<AtomPtr>& declared,
                   std::vector<AtomPtr>& registry) {
  switch (e->kind) {
    case Kind::True:
      return QualExpr::make_true();
    case Kind::Compare:
      if (e->cmp != CmpOp::Ge || e->number != 0.0) {
        throw SpecError(
            "internal error: comparison survived expansion in normalized "
            "form");
      }
      return QualExpr::make_geq0(lower_quant(e->lhs, declared, registry));
    case Kind::Not:
      return QualExpr::make_not(lower_qual(e->lhs, declared, registry));
    case Kind::And:
      return QualExpr::make_and(lower_qual(e->lhs, declared, registry),
                                lower_qual(e->rhs, declared, registry));
    default:
      throw SpecError(
          "internal error: sugar survived expansion in a qualitative "
          "expression");
  }
}

}  // namespace fairmon::bse
