#include <string>

#include "fairmon/bse/spec.hpp"
#include "fairmon/util/format.hpp"

namespace fairmon::bse {

namespace {

using util::format_double;

std::string render_word(const Word& word, const Alphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += ' ';
    out += word[i] == kWildcard ? "*" : alphabet.token(word[i]);
  }
  return out;
}

std::string render_word_list(const std::vector<Word>& words,
                             const Alphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ", ";
    out += '"' + render_word(words[i], alphabet) + '"';
  }
  return out;
}

// Precedence levels; a node is parenthesized when its level is below the
// minimum its context requires.
int quant_prec(const SurfaceExpr& e) {
  switch (e.kind) {
    case SurfaceExpr::Kind::Add:
    case SurfaceExpr::Kind::Sub:
      return 1;
    case SurfaceExpr::Kind::Mul:
    case SurfaceExpr::Kind::Div:
      return 2;
    case SurfaceExpr::Kind::Neg:
      return 3;
    default:
      return 4;
  }
}

int qual_prec(const SurfaceExpr& e) {
  switch (e.kind) {
    case SurfaceExpr::Kind::Or:
      return 1;
    case SurfaceExpr::Kind::And:
      return 2;
    case SurfaceExpr::Kind::Not:
      return 3;
    default:
      return 4;
  }
}

std::string print_quant(const SurfaceExpr& e, const Alphabet& alphabet,
                        int min_prec);
std::string print_qual(const SurfaceExpr& e, const Alphabet& alphabet,
                       int min_prec);

std::string print_quant(const SurfaceExpr& e, const Alphabet& alphabet,
                        int min_prec) {
  std::string out;
  switch (e.kind) {
    case SurfaceExpr::Kind::Number:
      out = format_double(e.number);
      break;
    case SurfaceExpr::Kind::AtomRef:
      out = e.ident;
      break;
    case SurfaceExpr::Kind::SeqProb:
      out = "P(" + render_word_list(e.success_set, alphabet);
      if (!e.given_set.empty()) {
        out += " | " + render_word_list(e.given_set, alphabet);
      }
      out += ')';
      break;
    case SurfaceExpr::Kind::Add:
      out = print_quant(*e.lhs, alphabet, 1) + " + " +
            print_quant(*e.rhs, alphabet, 2);
      break;
    case SurfaceExpr::Kind::Sub:
      out = print_quant(*e.lhs, alphabet, 1) + " - " +
            print_quant(*e.rhs, alphabet, 2);
      break;
    case SurfaceExpr::Kind::Mul:
      out = print_quant(*e.lhs, alphabet, 2) + " * " +
            print_quant(*e.rhs, alphabet, 3);
      break;
    case SurfaceExpr::Kind::Div:
      out = print_quant(*e.lhs, alphabet, 2) + " / " +
            print_quant(*e.rhs, alphabet, 3);
      break;
    case SurfaceExpr::Kind::Neg:
      out = "-" + print_quant(*e.lhs, alphabet, 3);
      break;
    case SurfaceExpr::Kind::Inv:
      out = "inv(" + print_quant(*e.lhs, alphabet, 1) + ")";
      break;
    default:
      throw SpecError("internal error: qualitative node in print_quant");
  }
  if (quant_prec(e) < min_prec) out = "(" + out + ")";
  return out;
}

std::string cmp_text(SurfaceExpr::CmpOp op) {
  switch (op) {
    case SurfaceExpr::CmpOp::Ge: return ">=";
    case SurfaceExpr::CmpOp::Le: return "<=";
    case SurfaceExpr::CmpOp::Eq: return "=";
    case SurfaceExpr::CmpOp::Gt: return ">";
    case SurfaceExpr::CmpOp::Lt: return "<";
  }
  return "?";
}

std::string print_qual(const SurfaceExpr& e, const Alphabet& alphabet,
                       int min_prec) {
  std::string out;
  switch (e.kind) {
    case SurfaceExpr::Kind::True:
      out = "true";
      break;
    case SurfaceExpr::Kind::Compare:
      out = print_quant(*e.lhs, alphabet, 1) + " " + cmp_text(e.cmp) + " " +
            format_double(e.number);
      break;
    case SurfaceExpr::Kind::Not:
      out = "!" + print_qual(*e.lhs, alphabet, 3);
      break;
    case SurfaceExpr::Kind::And:
      out = print_qual(*e.lhs, alphabet, 2) + " && " +
            print_qual(*e.rhs, alphabet, 3);
      break;
    case SurfaceExpr::Kind::Or:
      out = print_qual(*e.lhs, alphabet, 1) + " || " +
            print_qual(*e.rhs, alphabet, 2);
      break;
    default:
      throw SpecError("internal error: quantitative node in print_qual");
  }
  if (qual_prec(e) < min_prec) out = "(" + out + ")";
  return out;
}

}  // namespace

std::string pretty_print(const SpecDocument& doc) {
  std::string out = "alphabet:";
  for (const std::string& token : doc.alphabet.tokens()) {
    out += ' ';
    out += token;
  }
  out += '\n';

  for (const AtomPtr& atom : doc.declared_atoms) {
    out += "atom " + atom->name() + " arity " + std::to_string(atom->arity()) +
           " range " + format_double(atom->lower()) + " " +
           format_double(atom->upper()) + " {\n";
    for (const TableEntry& entry : atom->entries()) {
      out += "  \"" + render_word(entry.pattern, doc.alphabet) + "\" -> " +
             format_double(entry.value) + ";\n";
    }
    out += "  default " + format_double(atom->default_value()) + "\n}\n";
  }

  out += "delta: " + format_double(doc.delta) + "\n";
  out += "taumix: " + format_double(doc.tau_mix) + "\n";
  if (doc.is_qual) {
    out += "qual: " + print_qual(*doc.surface, doc.alphabet, 1) + "\n";
  } else {
    out += "quant: " + print_quant(*doc.surface, doc.alphabet, 1) + "\n";
  }
  return out;
}

}  // namespace fairmon::bse
