#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <string>
#include <vector>

#include "fairmon/bse/desugar.hpp"
#include "fairmon/bse/spec.hpp"

using namespace fairmon::bse;

namespace {

SpecDocument parse_quant_line(const std::string& expr) {
  return parse_spec("alphabet: a b\ndelta: 0.1\ntaumix: 2\nquant: " + expr +
                    "\n");
}

SpecDocument parse_qual_line(const std::string& expr) {
  return parse_spec("alphabet: a b\ndelta: 0.1\ntaumix: 2\nqual: " + expr +
                    "\n");
}

}  // namespace

TEST_CASE("alphabet declaration") {
  const auto doc = parse_spec("alphabet: a b c\ndelta: 0.5\ntaumix: 1\nquant: 1\n");
  CHECK(doc.alphabet.size() == 3);
  CHECK(doc.alphabet.token(0) == "a");
  CHECK(doc.alphabet.token(2) == "c");
  CHECK(doc.alphabet.find("b") == Symbol{1});
  CHECK(!doc.alphabet.find("d").has_value());
  CHECK_THROWS_AS(doc.alphabet.require("zz"), UnknownTokenError);

  try {
    parse_spec("alphabet: a * b\ndelta: 0.5\ntaumix: 1\nquant: 1\n");
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("reserved") != std::string::npos);
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(
      parse_spec("alphabet: a a\ndelta: 0.5\ntaumix: 1\nquant: 1\n"),
      SpecError);
  CHECK_THROWS_AS(parse_spec("alphabet:\ndelta: 0.5\ntaumix: 1\nquant: 1\n"),
                  SpecError);
  // Tokens are raw until end of line; punctuation-looking tokens are fine.
  const auto odd = parse_spec(
      "alphabet: x+1 p(2) true\ndelta: 0.5\ntaumix: 1\nquant: P(\"x+1\")\n");
  CHECK(odd.alphabet.token(0) == "x+1");
  CHECK(odd.alphabet.token(2) == "true");
}

TEST_CASE("declared atom tables evaluate most-specific-first") {
  const auto doc = parse_spec(
      "alphabet: a b\n"
      "atom f arity 2 range -1 3 {\n"
      "  \"a a\" -> 3;\n"
      "  \"a *\" -> 2;\n"
      "  \"* a\" -> 1;\n"
      "  default -1\n"
      "}\n"
      "delta: 0.1\ntaumix: 2\nquant: f\n");
  REQUIRE(doc.declared_atoms.size() == 1);
  const auto& f = *doc.declared_atoms[0];
  CHECK(f.arity() == 2);
  CHECK(f.range_width() == 4.0);
  const Word aa{0, 0}, ab{0, 1}, ba{1, 0}, bb{1, 1};
  CHECK(f.eval(aa) == 3.0);  // exact match beats wildcards
  CHECK(f.eval(ab) == 2.0);
  CHECK(f.eval(ba) == 1.0);
  CHECK(f.eval(bb) == -1.0);  // default

  // Equally specific patterns: the earliest declared wins.
  const auto tie = parse_spec(
      "alphabet: a b\n"
      "atom g arity 2 range 0 9 {\n"
      "  \"* a\" -> 5;\n"
      "  \"a *\" -> 7;\n"
      "  default 0\n"
      "}\n"
      "delta: 0.1\ntaumix: 2\nquant: g\n");
  CHECK(tie.declared_atoms[0]->eval(aa) == 5.0);
}

TEST_CASE("atom block validation") {
  auto block = [](const std::string& body) {
    return "alphabet: a b\n" + body + "delta: 0.1\ntaumix: 2\nquant: 1\n";
  };
  CHECK_THROWS_AS(parse_spec(block("atom f arity 0 range 0 1 { default 0 }\n")),
                  SpecError);
  CHECK_THROWS_AS(
      parse_spec(block("atom f arity 65 range 0 1 { default 0 }\n")),
      SpecError);
  CHECK_THROWS_AS(
      parse_spec(block("atom f arity 2 range 1 1 { default 1 }\n")),
      SpecError);
  CHECK_THROWS_AS(
      parse_spec(block("atom f arity 1 range 0 1 { \"a b\" -> 1; default 0 }\n")),
      SpecError);
  CHECK_THROWS_AS(
      parse_spec(block("atom f arity 2 range 0 1 { \"* *\" -> 1; default 0 }\n")),
      SpecError);
  CHECK_THROWS_AS(
      parse_spec(block("atom f arity 1 range 0 1 { \"a\" -> 2; default 0 }\n")),
      SpecError);
  CHECK_THROWS_AS(
      parse_spec(block("atom f arity 1 range 0 1 { default 7 }\n")),
      SpecError);
  CHECK_THROWS_AS(
      parse_spec(block("atom delta arity 1 range 0 1 { default 0 }\n")),
      SpecError);
  CHECK_THROWS_AS(
      parse_spec(block("atom f arity 1 range 0 1 { default 0 }\n"
                       "atom f arity 1 range 0 1 { default 0 }\n")),
      SpecError);
  // Optional semicolon after the default value.
  CHECK_NOTHROW(
      parse_spec(block("atom f arity 1 range 0 1 { default 0; }\n")));
}

TEST_CASE("scalar sections validated") {
  CHECK_THROWS_AS(parse_spec("alphabet: a\ndelta: 0\ntaumix: 1\nquant: 1\n"),
                  SpecError);
  CHECK_THROWS_AS(parse_spec("alphabet: a\ndelta: 1\ntaumix: 1\nquant: 1\n"),
                  SpecError);
  CHECK_THROWS_AS(
      parse_spec("alphabet: a\ndelta: 0.5\ntaumix: -3\nquant: 1\n"),
      SpecError);
  CHECK_THROWS_AS(parse_spec("alphabet: a\ntaumix: 1\ndelta: 0.5\nquant: 1\n"),
                  SpecError);  // fixed section order
}

TEST_CASE("sequence probabilities lower to padded indicators") {
  const auto doc = parse_quant_line("P(\"a a\")");
  REQUIRE(doc.quant_root);
  const auto& root = *doc.quant_root;
  REQUIRE(root.kind == QuantExpr::Kind::Atom);
  CHECK(root.atom->arity() == 2);
  CHECK(root.atom->lower() == 0.0);
  CHECK(root.atom->upper() == 1.0);
  CHECK(root.atom->eval(Word{0, 0}) == 1.0);
  CHECK(root.atom->eval(Word{0, 1}) == 0.0);

  // Multi-word sets: shorter words padded with trailing wildcards.
  const auto multi = parse_quant_line("P(\"a\", \"b a\")");
  const auto& atom = *multi.quant_root->atom;
  CHECK(atom.arity() == 2);
  CHECK(atom.eval(Word{0, 0}) == 1.0);  // prefix a
  CHECK(atom.eval(Word{0, 1}) == 1.0);
  CHECK(atom.eval(Word{1, 0}) == 1.0);  // exactly b a
  CHECK(atom.eval(Word{1, 1}) == 0.0);
}

TEST_CASE("conditional probabilities become joint times inverse") {
  const auto doc = parse_quant_line("P(\"a\" | \"a\") - P(\"b\" | \"b\")");
  REQUIRE(doc.quant_root);
  // Shape: Add(Mul(joint_aa, Inv(given_a)), Mul(-1, Mul(joint_bb, Inv(given_b))))
  const auto& root = *doc.quant_root;
  REQUIRE(root.kind == QuantExpr::Kind::Add);
  const auto& pos = *root.lhs;
  REQUIRE(pos.kind == QuantExpr::Kind::Mul);
  REQUIRE(pos.lhs->kind == QuantExpr::Kind::Atom);
  REQUIRE(pos.rhs->kind == QuantExpr::Kind::Inv);
  REQUIRE(pos.rhs->lhs->kind == QuantExpr::Kind::Atom);

  // Both the joint and the conditioning indicator live at the padded arity.
  const auto& joint = *pos.lhs->atom;
  const auto& given = *pos.rhs->lhs->atom;
  CHECK(joint.arity() == 2);
  CHECK(given.arity() == 2);
  CHECK(joint.eval(Word{0, 0}) == 1.0);
  CHECK(joint.eval(Word{0, 1}) == 0.0);
  CHECK(given.eval(Word{0, 0}) == 1.0);  // wildcard second position
  CHECK(given.eval(Word{0, 1}) == 1.0);
  CHECK(given.eval(Word{1, 0}) == 0.0);

  const auto& neg = *root.rhs;
  REQUIRE(neg.kind == QuantExpr::Kind::Mul);
  REQUIRE(neg.lhs->kind == QuantExpr::Kind::Constant);
  CHECK(neg.lhs->constant == -1.0);

  // Four structurally distinct derived atoms in total.
  CHECK(doc.unique_atoms().size() == 4);
  CHECK(doc.declared_atoms.empty());
  CHECK(doc.atoms.size() == 4);
}

TEST_CASE("longer conditioning words extend the window") {
  const auto doc = parse_quant_line("P(\"a b\" | \"b a\")");
  const auto atoms = doc.unique_atoms();
  REQUIRE(atoms.size() == 2);
  for (const auto& atom : atoms) CHECK(atom->arity() == 4);
  // Numerator matches the concatenation b a a b.
  CHECK(atoms[0]->eval(Word{1, 0, 0, 1}) == 1.0);
  CHECK(atoms[0]->eval(Word{1, 0, 0, 0}) == 0.0);
  // Denominator checks only the conditioning prefix.
  CHECK(atoms[1]->eval(Word{1, 0, 1, 1}) == 1.0);
  CHECK(atoms[1]->eval(Word{0, 0, 0, 1}) == 0.0);
}

TEST_CASE("shared subexpressions dedupe to one atom") {
  const auto doc = parse_quant_line("P(\"a\") + P(\"a\")");
  CHECK(doc.unique_atoms().size() == 1);
  const auto two = parse_quant_line("P(\"a\") + P(\"b\")");
  CHECK(two.unique_atoms().size() == 2);
  // A conditional shares its denominator with a matching plain probability
  // only when the padded structure matches, which it does not at arity 1.
  const auto mixed = parse_quant_line("P(\"a\" | \"a\") + P(\"a\")");
  CHECK(mixed.unique_atoms().size() == 3);
}

TEST_CASE("comparison sugar expands to the normalized >= 0 form") {
  SUBCASE("geq zero stays bare") {
    const auto doc = parse_qual_line("P(\"a\") >= 0");
    REQUIRE(doc.qual_root->kind == QualExpr::Kind::Geq0);
    CHECK(doc.qual_root->quant->kind == QuantExpr::Kind::Atom);
  }
  SUBCASE("geq shifts by the bound") {
    const auto doc = parse_qual_line("P(\"a\") >= 0.25");
    const auto& g = *doc.qual_root;
    REQUIRE(g.kind == QualExpr::Kind::Geq0);
    REQUIRE(g.quant->kind == QuantExpr::Kind::Add);
    CHECK(g.quant->lhs->kind == QuantExpr::Kind::Atom);
    const auto& shift = *g.quant->rhs;
    REQUIRE(shift.kind == QuantExpr::Kind::Mul);
    CHECK(shift.lhs->constant == -1.0);
    CHECK(shift.rhs->constant == 0.25);
  }
  SUBCASE("leq negates the operand") {
    const auto doc = parse_qual_line("P(\"a\") <= 0.25");
    const auto& g = *doc.qual_root;
    REQUIRE(g.kind == QualExpr::Kind::Geq0);
    REQUIRE(g.quant->kind == QuantExpr::Kind::Add);
    const auto& neg = *g.quant->lhs;
    REQUIRE(neg.kind == QuantExpr::Kind::Mul);
    CHECK(neg.lhs->constant == -1.0);
    CHECK(neg.rhs->kind == QuantExpr::Kind::Atom);
    CHECK(g.quant->rhs->constant == 0.25);
  }
  SUBCASE("equality is the conjunction of both sides") {
    const auto doc = parse_qual_line("P(\"a\") = 0");
    const auto& root = *doc.qual_root;
    REQUIRE(root.kind == QualExpr::Kind::And);
    REQUIRE(root.lhs->kind == QualExpr::Kind::Geq0);
    CHECK(root.lhs->quant->kind == QuantExpr::Kind::Atom);
    REQUIRE(root.rhs->kind == QualExpr::Kind::Geq0);
    const auto& mirrored = *root.rhs->quant;
    REQUIRE(mirrored.kind == QuantExpr::Kind::Mul);
    CHECK(mirrored.lhs->constant == -1.0);
    CHECK(mirrored.rhs->kind == QuantExpr::Kind::Atom);
    // Shared operand: still a single estimated atom.
    CHECK(doc.unique_atoms().size() == 1);
  }
  SUBCASE("strict comparisons negate the closed complement") {
    const auto gt = parse_qual_line("P(\"a\") > 0.5");
    REQUIRE(gt.qual_root->kind == QualExpr::Kind::Not);
    CHECK(gt.qual_root->lhs->kind == QualExpr::Kind::Geq0);
    const auto lt = parse_qual_line("P(\"a\") < 0.5");
    REQUIRE(lt.qual_root->kind == QualExpr::Kind::Not);
    CHECK(lt.qual_root->lhs->kind == QualExpr::Kind::Geq0);
  }
  SUBCASE("disjunction becomes negated conjunction") {
    const auto doc = parse_qual_line("true || P(\"a\") >= 0");
    const auto& root = *doc.qual_root;
    REQUIRE(root.kind == QualExpr::Kind::Not);
    REQUIRE(root.lhs->kind == QualExpr::Kind::And);
    CHECK(root.lhs->lhs->kind == QualExpr::Kind::Not);
    CHECK(root.lhs->lhs->lhs->kind == QualExpr::Kind::True);
    CHECK(root.lhs->rhs->kind == QualExpr::Kind::Not);
    CHECK(root.lhs->rhs->lhs->kind == QualExpr::Kind::Geq0);
  }
}

TEST_CASE("quantitative sugar expands to the core operations") {
  const auto div = parse_quant_line("P(\"a\") / P(\"b\")");
  REQUIRE(div.quant_root->kind == QuantExpr::Kind::Mul);
  CHECK(div.quant_root->rhs->kind == QuantExpr::Kind::Inv);

  const auto neg = parse_quant_line("-P(\"a\")");
  REQUIRE(neg.quant_root->kind == QuantExpr::Kind::Mul);
  CHECK(neg.quant_root->lhs->constant == -1.0);

  // Unary minus on literals folds into the constant.
  const auto lit = parse_quant_line("-2.5");
  REQUIRE(lit.quant_root->kind == QuantExpr::Kind::Constant);
  CHECK(lit.quant_root->constant == -2.5);

  const auto inv = parse_quant_line("inv(P(\"a\") + 1)");
  REQUIRE(inv.quant_root->kind == QuantExpr::Kind::Inv);
  CHECK(inv.quant_root->lhs->kind == QuantExpr::Kind::Add);
}

TEST_CASE("declared atoms are referenced by name") {
  const auto doc = parse_spec(
      "alphabet: a b\n"
      "atom score arity 1 range 0 10 { \"a\" -> 10; default 0 }\n"
      "delta: 0.1\ntaumix: 2\nquant: score * 2\n");
  REQUIRE(doc.quant_root->kind == QuantExpr::Kind::Mul);
  CHECK(doc.quant_root->lhs->atom->name() == "score");
  CHECK(doc.unique_atoms().size() == 1);

  CHECK_THROWS_AS(parse_quant_line("missing + 1"), SpecError);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_spec("alphabet: a b\ndelta: 0.1\ntaumix: 2\nquant: P(\"c\")\n");
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 10);
  }
  try {
    parse_spec("alphabet: a\ndelta: 0.1\ntaumix: 2\nquant: 1 +\n");
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(e.line() >= 4);  // expression ran off the end of the document
  }
  try {
    parse_spec("alphabet: a\ndelta: 0.1\ntaumix: 2\nquant: 1\nextra\n");
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("trailing") != std::string::npos);
    CHECK(e.line() == 5);
  }
  CHECK_THROWS_AS(parse_quant_line("P(\"a)"), SpecError);   // unterminated
  CHECK_THROWS_AS(parse_quant_line("P()"), SpecError);
  CHECK_THROWS_AS(parse_qual_line("true &&"), SpecError);
  CHECK_THROWS_AS(parse_qual_line("P(\"a\") >= P(\"b\")"), SpecError);
}

TEST_CASE("comments and blank lines are ignored") {
  const auto doc = parse_spec(
      "# heading\n"
      "alphabet: a b # trailing note\n"
      "\n"
      "delta: 0.1 # half-width budget\n"
      "taumix: 2\n"
      "quant: 1 # done\n");
  CHECK(doc.alphabet.size() == 2);
  CHECK(doc.quant_root->constant == 1.0);
}

TEST_CASE("parenthesized comparisons disambiguate") {
  const auto doc = parse_qual_line("(P(\"a\") + P(\"b\")) * 2 >= 1");
  REQUIRE(doc.qual_root->kind == QualExpr::Kind::Geq0);
  const auto wrapped = parse_qual_line("(true && P(\"a\") >= 0)");
  REQUIRE(wrapped.qual_root->kind == QualExpr::Kind::And);
  const auto not_cmp = parse_qual_line("!P(\"a\") >= 0.5");
  REQUIRE(not_cmp.qual_root->kind == QualExpr::Kind::Not);
  CHECK(not_cmp.qual_root->lhs->kind == QualExpr::Kind::Geq0);
}

// ---------------------------------------------------------------------------
// Round-trip property: generated documents survive print -> parse.

namespace {

struct Gen {
  std::mt19937 rng;
  std::vector<std::string> alphabet;
  std::vector<std::pair<std::string, int>> atoms;  // name, arity

  explicit Gen(std::uint32_t seed) : rng(seed) {}

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  }
  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }

  std::string fresh_name(std::set<std::string>& used, const char* prefix) {
    while (true) {
      std::string name = prefix;
      const int len = uniform(1, 4);
      for (int i = 0; i < len; ++i) {
        name += static_cast<char>('a' + uniform(0, 25));
      }
      if (used.insert(name).second) return name;
    }
  }

  std::string word(int max_len) {
    std::string out = "\"";
    const int len = uniform(1, max_len);
    for (int i = 0; i < len; ++i) {
      if (i > 0) out += ' ';
      out += alphabet[uniform(0, static_cast<int>(alphabet.size()) - 1)];
    }
    return out + "\"";
  }

  std::string word_list() {
    std::string out = word(2);
    const int extra = uniform(0, 1);
    for (int i = 0; i < extra; ++i) out += ", " + word(2);
    return out;
  }

  std::string quant(int depth) {
    const int pick = depth <= 0 ? uniform(0, 2) : uniform(0, 8);
    switch (pick) {
      case 0:
        return std::to_string(uniform(-99, 99)) +
               (uniform(0, 1) ? "" : "." + std::to_string(uniform(1, 9)));
      case 1:
        return "P(" + word_list() + ")";
      case 2:
        if (!atoms.empty()) {
          return atoms[uniform(0, static_cast<int>(atoms.size()) - 1)].first;
        }
        return "P(" + word_list() + ")";
      case 3:
        return "P(" + word_list() + " | " + word_list() + ")";
      case 4:
        return "(" + quant(depth - 1) + ") + (" + quant(depth - 1) + ")";
      case 5:
        return "(" + quant(depth - 1) + ") - (" + quant(depth - 1) + ")";
      case 6:
        return "(" + quant(depth - 1) + ") * (" + quant(depth - 1) + ")";
      case 7:
        return "(" + quant(depth - 1) + ") / (" + quant(depth - 1) + ")";
      default:
        return "inv(" + quant(depth - 1) + ")";
    }
  }

  std::string qual(int depth) {
    const int pick = depth <= 0 ? uniform(0, 1) : uniform(0, 4);
    switch (pick) {
      case 0:
        return "true";
      case 1: {
        static const char* ops[] = {">=", "<=", "=", ">", "<"};
        return quant(depth - 1) + " " + ops[uniform(0, 4)] + " " +
               std::to_string(uniform(-9, 9));
      }
      case 2:
        return "!(" + qual(depth - 1) + ")";
      case 3:
        return "(" + qual(depth - 1) + ") && (" + qual(depth - 1) + ")";
      default:
        return "(" + qual(depth - 1) + ") || (" + qual(depth - 1) + ")";
    }
  }

  std::string document() {
    std::set<std::string> used{"alphabet", "atom",  "arity", "range",
                              "default",  "delta", "taumix", "quant",
                              "qual",     "true",  "inv",   "P"};
    alphabet.clear();
    atoms.clear();
    std::string text = "alphabet:";
    const int letters = uniform(1, 3);
    for (int i = 0; i < letters; ++i) {
      alphabet.push_back(fresh_name(used, ""));
      text += " " + alphabet.back();
    }
    text += "\n";

    const int natoms = uniform(0, 2);
    for (int i = 0; i < natoms; ++i) {
      const std::string name = fresh_name(used, "f");
      const int arity = uniform(1, 3);
      atoms.emplace_back(name, arity);
      const double lo = real(-4.0, 0.0);
      const double hi = lo + real(0.5, 4.0);
      text += "atom " + name + " arity " + std::to_string(arity) + " range " +
              std::to_string(lo) + " " + std::to_string(hi) + " {\n";
      const int entries = uniform(0, 2);
      // Interior values only, so 6-decimal rendering cannot leave the range.
      const double vlo = lo + 0.1, vhi = hi - 0.1;
      for (int e = 0; e < entries; ++e) {
        text += "  \"";
        const int wildcard_at = uniform(-2, arity - 1);  // often none
        for (int p = 0; p < arity; ++p) {
          if (p > 0) text += ' ';
          if (p == wildcard_at) {
            text += '*';
          } else {
            text += alphabet[uniform(0, static_cast<int>(alphabet.size()) - 1)];
          }
        }
        text += "\" -> " + std::to_string(real(vlo, vhi)) + ";\n";
      }
      text += "  default " + std::to_string(real(vlo, vhi)) + "\n}\n";
    }

    text += "delta: 0." + std::to_string(uniform(1, 9)) + "\n";
    text += "taumix: " + std::to_string(real(0.5, 500.0)) + "\n";
    if (uniform(0, 1)) {
      text += "qual: " + qual(3) + "\n";
    } else {
      text += "quant: " + quant(3) + "\n";
    }
    return text;
  }
};

}  // namespace

TEST_CASE("print-parse round trip holds on generated documents") {
  Gen gen(48151623u);
  for (int i = 0; i < 1000; ++i) {
    const std::string text = gen.document();
    CAPTURE(text);
    SpecDocument doc;
    try {
      doc = parse_spec(text);
    } catch (const SpecError& e) {
      FAIL("generated document failed to parse: " << e.what() << "\n"
                                                  << text);
    }
    const std::string printed = pretty_print(doc);
    CAPTURE(printed);
    SpecDocument reparsed;
    try {
      reparsed = parse_spec(printed);
    } catch (const SpecError& e) {
      FAIL("printed document failed to parse: " << e.what() << "\n"
                                                << printed);
    }
    REQUIRE(structurally_equal(doc, reparsed));
    // Printing is a fixed point after one normalization.
    CHECK(pretty_print(reparsed) == printed);
  }
}

TEST_CASE("canonical printing of the shipped documents") {
  const auto doc = parse_spec(
      "alphabet: a b\ndelta: 0.05\ntaumix: 7.45\n"
      "quant: P(\"a\" | \"a\") - P(\"b\" | \"b\")\n");
  CHECK(pretty_print(doc) ==
        "alphabet: a b\n"
        "delta: 0.05\n"
        "taumix: 7.45\n"
        "quant: P(\"a\" | \"a\") - P(\"b\" | \"b\")\n");
}
