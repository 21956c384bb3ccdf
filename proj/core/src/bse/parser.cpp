#include <cassert>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "fairmon/bse/desugar.hpp"
#include "fairmon/bse/spec.hpp"

namespace fairmon::bse {

namespace {

enum class Tok {
  Ident,
  Number,
  String,  // quoted observation word or table pattern
  Raw,     // alphabet entry
  LBrace,
  RBrace,
  LParen,
  RParen,
  Semi,
  Comma,
  Pipe,
  Arrow,
  Colon,
  Star,
  Plus,
  Minus,
  Slash,
  Bang,
  AndAnd,
  OrOr,
  Ge,
  Le,
  Gt,
  Lt,
  Eq,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  double num = 0.0;
  int line = 1;
  int col = 1;
};

constexpr std::string_view kReservedWords[] = {
    "alphabet", "atom", "arity", "range", "default", "delta",
    "taumix",   "quant", "qual",  "true",  "inv",     "P",
};

bool is_reserved(std::string_view word) {
  for (std::string_view r : kReservedWords) {
    if (word == r) return true;
  }
  return false;
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    // Tolerate a UTF-8 byte-order mark.
    if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    while (true) {
      skip_blank();
      if (pos_ >= text_.size()) break;
      const int line = line_, col = col_;
      const char c = text_[pos_];
      if (is_ident_start(c)) {
        std::string word = take_while(is_ident_char);
        const bool line_start = out.empty() || out.back().line < line;
        out.push_back({Tok::Ident, std::move(word), 0.0, line, col});
        if (out.back().text == "alphabet" && line_start) {
          lex_alphabet_line(out);
        }
        continue;
      }
      if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() &&
                          is_digit(text_[pos_ + 1]))) {
        out.push_back(lex_number(line, col));
        continue;
      }
      if (c == '"') {
        out.push_back(lex_string(line, col));
        continue;
      }
      out.push_back(lex_punct(line, col));
    }
    out.push_back({Tok::End, "", 0.0, line_, col_});
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  template <typename Pred>
  std::string take_while(Pred pred) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  Token lex_number(int line, int col) {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double value = 0.0;
    auto [end, ec] = std::from_chars(first, last, value);
    if (ec != std::errc()) {
      throw SpecError("malformed number", line, col);
    }
    std::string text(first, end);
    for (std::size_t i = 0; i < text.size(); ++i) advance();
    return {Tok::Number, std::move(text), value, line, col};
  }

  Token lex_string(int line, int col) {
    advance();  // opening quote
    std::string content;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        throw SpecError("unterminated string", line, col);
      }
      const char c = text_[pos_];
      advance();
      if (c == '"') break;
      content += c;
    }
    return {Tok::String, std::move(content), 0.0, line, col};
  }

  Token lex_punct(int line, int col) {
    auto two = [&](char a, char b) {
      return text_[pos_] == a && pos_ + 1 < text_.size() &&
             text_[pos_ + 1] == b;
    };
    auto emit = [&](Tok kind, int len) {
      std::string text(text_.substr(pos_, len));
      for (int i = 0; i < len; ++i) advance();
      return Token{kind, std::move(text), 0.0, line, col};
    };
    if (two('-', '>')) return emit(Tok::Arrow, 2);
    if (two('&', '&')) return emit(Tok::AndAnd, 2);
    if (two('|', '|')) return emit(Tok::OrOr, 2);
    if (two('>', '=')) return emit(Tok::Ge, 2);
    if (two('<', '=')) return emit(Tok::Le, 2);
    switch (text_[pos_]) {
      case '{': return emit(Tok::LBrace, 1);
      case '}': return emit(Tok::RBrace, 1);
      case '(': return emit(Tok::LParen, 1);
      case ')': return emit(Tok::RParen, 1);
      case ';': return emit(Tok::Semi, 1);
      case ',': return emit(Tok::Comma, 1);
      case '|': return emit(Tok::Pipe, 1);
      case ':': return emit(Tok::Colon, 1);
      case '*': return emit(Tok::Star, 1);
      case '+': return emit(Tok::Plus, 1);
      case '-': return emit(Tok::Minus, 1);
      case '/': return emit(Tok::Slash, 1);
      case '!': return emit(Tok::Bang, 1);
      case '>': return emit(Tok::Gt, 1);
      case '<': return emit(Tok::Lt, 1);
      case '=': return emit(Tok::Eq, 1);
      default:
        throw SpecError(
            std::string("unexpected character '") + text_[pos_] + "'", line,
            col);
    }
  }

  // The alphabet section is line-scoped: after `alphabet:` the rest of the
  // line is whitespace-separated raw tokens, so structured tokens like
  // `(A,1)` need no quoting.
  void lex_alphabet_line(std::vector<Token>& out) {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t')) {
      advance();
    }
    if (pos_ >= text_.size() || text_[pos_] != ':') {
      throw SpecError("expected ':' after 'alphabet'", line_, col_);
    }
    out.push_back({Tok::Colon, ":", 0.0, line_, col_});
    advance();
    while (pos_ < text_.size()) {
      while (pos_ < text_.size() &&
             (text_[pos_] == ' ' || text_[pos_] == '\t' ||
              text_[pos_] == '\r')) {
        advance();
      }
      if (pos_ >= text_.size() || text_[pos_] == '\n') break;
      if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        break;
      }
      const int line = line_, col = col_;
      std::string token = take_while([](char c) {
        return c != ' ' && c != '\t' && c != '\r' && c != '\n' && c != '#';
      });
      out.push_back({Tok::Raw, std::move(token), 0.0, line, col});
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SpecDocument run() {
    SpecDocument doc;
    parse_alphabet(doc);
    while (at_keyword("atom")) parse_atom_block(doc);
    doc.delta = parse_scalar_section("delta");
    if (!(doc.delta > 0.0 && doc.delta < 1.0)) {
      fail_prev("delta must lie strictly between 0 and 1");
    }
    doc.tau_mix = parse_scalar_section("taumix");
    if (!(doc.tau_mix > 0.0) || !std::isfinite(doc.tau_mix)) {
      fail_prev("taumix must be a positive finite real");
    }
    if (at_keyword("quant")) {
      get();
      expect(Tok::Colon, "':'");
      doc.is_qual = false;
      doc.surface = parse_quant_expr(doc);
    } else if (at_keyword("qual")) {
      get();
      expect(Tok::Colon, "':'");
      doc.is_qual = true;
      doc.surface = parse_qual_expr(doc);
    } else {
      fail("expected 'quant:' or 'qual:' section");
    }
    if (!check(Tok::End)) fail("unexpected trailing input");

    SurfacePtr expanded = expand_sugar(doc.surface);
    std::vector<AtomPtr> derived;
    if (doc.is_qual) {
      doc.qual_root = lower_qual(expanded, doc.declared_atoms, derived);
    } else {
      doc.quant_root = lower_quant(expanded, doc.declared_atoms, derived);
    }
    doc.atoms = doc.declared_atoms;
    doc.atoms.insert(doc.atoms.end(), derived.begin(), derived.end());
    return doc;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& prev() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }
  const Token& get() { return toks_[pos_++]; }
  bool check(Tok k) const { return peek().kind == k; }

  bool at_keyword(std::string_view word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SpecError(msg, peek().line, peek().col);
  }

  [[noreturn]] void fail_prev(const std::string& msg) const {
    throw SpecError(msg, prev().line, prev().col);
  }

  const Token& expect(Tok kind, const char* what) {
    if (!check(kind)) fail(std::string("expected ") + what);
    return get();
  }

  void expect_keyword(std::string_view word) {
    if (!at_keyword(word)) fail("expected '" + std::string(word) + "'");
    get();
  }

  double parse_signed_number() {
    bool negative = false;
    if (check(Tok::Minus)) {
      get();
      negative = true;
    }
    const Token& t = expect(Tok::Number, "a number");
    return negative ? -t.num : t.num;
  }

  // ---- sections ---------------------------------------------------------

  void parse_alphabet(SpecDocument& doc) {
    expect_keyword("alphabet");
    expect(Tok::Colon, "':'");
    std::vector<std::string> tokens;
    while (check(Tok::Raw)) {
      const Token& t = get();
      if (t.text == "*") {
        throw SpecError("'*' is reserved as the table wildcard", t.line,
                        t.col);
      }
      if (t.text.find('"') != std::string::npos) {
        throw SpecError("observation tokens must not contain '\"'", t.line,
                        t.col);
      }
      for (const std::string& seen : tokens) {
        if (seen == t.text) {
          throw SpecError("duplicate observation token '" + t.text + "'",
                          t.line, t.col);
        }
      }
      tokens.push_back(t.text);
    }
    if (tokens.empty()) fail("alphabet must declare at least one token");
    doc.alphabet = Alphabet(std::move(tokens));
  }

  // atom <name> arity <n> range <a> <b> { "<pattern>" -> <v>; ... default <v> }
  void parse_atom_block(SpecDocument& doc) {
    expect_keyword("atom");
    const Token& name_tok = expect(Tok::Ident, "an atom name");
    const std::string name = name_tok.text;
    if (is_reserved(name)) {
      throw SpecError("'" + name + "' is a reserved word", name_tok.line,
                      name_tok.col);
    }
    for (const AtomPtr& a : doc.declared_atoms) {
      if (a->name() == name) {
        throw SpecError("duplicate atom name '" + name + "'", name_tok.line,
                        name_tok.col);
      }
    }

    expect_keyword("arity");
    const Token& arity_tok = expect(Tok::Number, "a positive integer arity");
    double arity_raw = arity_tok.num;
    int arity = static_cast<int>(arity_raw);
    if (arity_raw != arity || arity < 1 || arity > 64) {
      throw SpecError("arity must be an integer in [1, 64]", arity_tok.line,
                      arity_tok.col);
    }

    expect_keyword("range");
    double lower = parse_signed_number();
    double upper = parse_signed_number();
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
      fail_prev("range bounds must be finite with lower < upper");
    }

    expect(Tok::LBrace, "'{'");
    std::vector<TableEntry> entries;
    while (check(Tok::String)) {
      const Token& pattern_tok = get();
      Word pattern =
          parse_pattern(pattern_tok, doc.alphabet, arity, /*wildcards=*/true);
      expect(Tok::Arrow, "'->'");
      double value = parse_signed_number();
      if (!(value >= lower && value <= upper)) {
        fail_prev("table value outside the declared range");
      }
      expect(Tok::Semi, "';'");
      entries.push_back(TableEntry{std::move(pattern), value});
    }
    expect_keyword("default");
    double default_value = parse_signed_number();
    if (!(default_value >= lower && default_value <= upper)) {
      fail_prev("default value outside the declared range");
    }
    if (check(Tok::Semi)) get();
    expect(Tok::RBrace, "'}'");

    doc.declared_atoms.push_back(std::make_shared<AtomicFunction>(
        name, arity, lower, upper, std::move(entries), default_value));
  }

  double parse_scalar_section(std::string_view keyword) {
    expect_keyword(keyword);
    expect(Tok::Colon, "':'");
    return parse_signed_number();
  }

  // Splits the quoted text on whitespace and resolves each piece against
  // the alphabet; `*` becomes a wildcard when `wildcards` is set (at most
  // one per pattern).
  Word parse_pattern(const Token& tok, const Alphabet& alphabet,
                     int required_length, bool wildcards) {
    Word word;
    int wildcard_count = 0;
    std::size_t i = 0;
    const std::string& s = tok.text;
    while (i < s.size()) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
      if (i >= s.size()) break;
      std::size_t start = i;
      while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
      std::string_view piece(s.data() + start, i - start);
      if (wildcards && piece == "*") {
        ++wildcard_count;
        word.push_back(kWildcard);
        continue;
      }
      auto sym = alphabet.find(piece);
      if (!sym) {
        throw SpecError("unknown observation token '" + std::string(piece) +
                            "'",
                        tok.line, tok.col);
      }
      word.push_back(*sym);
    }
    if (word.empty()) {
      throw SpecError("empty observation word", tok.line, tok.col);
    }
    if (wildcard_count > 1) {
      throw SpecError("at most one wildcard per table entry", tok.line,
                      tok.col);
    }
    if (required_length >= 0 &&
        static_cast<int>(word.size()) != required_length) {
      throw SpecError("pattern length " + std::to_string(word.size()) +
                          " does not match arity " +
                          std::to_string(required_length),
                      tok.line, tok.col);
    }
    return word;
  }

  // ---- quantitative expressions -----------------------------------------

  SurfacePtr parse_quant_expr(const SpecDocument& doc) {
    SurfacePtr lhs = parse_quant_term(doc);
    while (check(Tok::Plus) || check(Tok::Minus)) {
      const bool add = get().kind == Tok::Plus;
      SurfacePtr rhs = parse_quant_term(doc);
      lhs = SurfaceExpr::binary(
          add ? SurfaceExpr::Kind::Add : SurfaceExpr::Kind::Sub,
          std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  SurfacePtr parse_quant_term(const SpecDocument& doc) {
    SurfacePtr lhs = parse_quant_factor(doc);
    while (check(Tok::Star) || check(Tok::Slash)) {
      const bool mul = get().kind == Tok::Star;
      SurfacePtr rhs = parse_quant_factor(doc);
      lhs = SurfaceExpr::binary(
          mul ? SurfaceExpr::Kind::Mul : SurfaceExpr::Kind::Div,
          std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  SurfacePtr parse_quant_factor(const SpecDocument& doc) {
    if (check(Tok::Minus)) {
      get();
      SurfacePtr inner = parse_quant_factor(doc);
      if (inner->kind == SurfaceExpr::Kind::Number) {
        return SurfaceExpr::number_lit(-inner->number);
      }
      return SurfaceExpr::unary(SurfaceExpr::Kind::Neg, std::move(inner));
    }
    return parse_quant_primary(doc);
  }

  SurfacePtr parse_quant_primary(const SpecDocument& doc) {
    if (check(Tok::Number)) {
      return SurfaceExpr::number_lit(get().num);
    }
    if (check(Tok::LParen)) {
      get();
      SurfacePtr inner = parse_quant_expr(doc);
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (at_keyword("inv")) {
      get();
      expect(Tok::LParen, "'('");
      SurfacePtr inner = parse_quant_expr(doc);
      expect(Tok::RParen, "')'");
      return SurfaceExpr::unary(SurfaceExpr::Kind::Inv, std::move(inner));
    }
    if (at_keyword("P")) {
      get();
      return parse_seq_prob(doc);
    }
    if (check(Tok::Ident)) {
      const Token& t = peek();
      if (is_reserved(t.text)) {
        fail("unexpected '" + t.text + "' in a quantitative expression");
      }
      for (const AtomPtr& a : doc.declared_atoms) {
        if (a->name() == t.text) {
          get();
          return SurfaceExpr::atom_ref(t.text);
        }
      }
      fail("unknown atom '" + t.text + "'");
    }
    fail("expected a quantitative expression");
  }

  SurfacePtr parse_seq_prob(const SpecDocument& doc) {
    expect(Tok::LParen, "'('");
    std::vector<Word> success = parse_word_list(doc);
    std::vector<Word> given;
    if (check(Tok::Pipe)) {
      get();
      given = parse_word_list(doc);
    }
    expect(Tok::RParen, "')'");
    return SurfaceExpr::seq_prob(std::move(success), std::move(given));
  }

  std::vector<Word> parse_word_list(const SpecDocument& doc) {
    std::vector<Word> words;
    while (true) {
      const Token& t = expect(Tok::String, "a quoted observation word");
      words.push_back(
          parse_pattern(t, doc.alphabet, /*required_length=*/-1,
                        /*wildcards=*/false));
      if (!check(Tok::Comma)) break;
      get();
    }
    return words;
  }

  // ---- qualitative expressions ------------------------------------------

  SurfacePtr parse_qual_expr(const SpecDocument& doc) {
    SurfacePtr lhs = parse_qual_conj(doc);
    while (check(Tok::OrOr)) {
      get();
      SurfacePtr rhs = parse_qual_conj(doc);
      lhs = SurfaceExpr::binary(SurfaceExpr::Kind::Or, std::move(lhs),
                                std::move(rhs));
    }
    return lhs;
  }

  SurfacePtr parse_qual_conj(const SpecDocument& doc) {
    SurfacePtr lhs = parse_qual_unary(doc);
    while (check(Tok::AndAnd)) {
      get();
      SurfacePtr rhs = parse_qual_unary(doc);
      lhs = SurfaceExpr::binary(SurfaceExpr::Kind::And, std::move(lhs),
                                std::move(rhs));
    }
    return lhs;
  }

  SurfacePtr parse_qual_unary(const SpecDocument& doc) {
    if (check(Tok::Bang)) {
      get();
      return SurfaceExpr::unary(SurfaceExpr::Kind::Not,
                                parse_qual_unary(doc));
    }
    return parse_qual_primary(doc);
  }

  SurfacePtr parse_qual_primary(const SpecDocument& doc) {
    if (at_keyword("true")) {
      get();
      return SurfaceExpr::boolean_true();
    }
    // A leading '(' is ambiguous: it may open a parenthesized qualitative
    // expression or the quantitative side of a comparison. Try the
    // comparison reading first and fall back on failure.
    if (check(Tok::LParen)) {
      const std::size_t save = pos_;
      try {
        return parse_comparison(doc);
      } catch (const SpecError&) {
        pos_ = save;
      }
      get();  // '('
      SurfacePtr inner = parse_qual_expr(doc);
      expect(Tok::RParen, "')'");
      return inner;
    }
    return parse_comparison(doc);
  }

  SurfacePtr parse_comparison(const SpecDocument& doc) {
    SurfacePtr quant = parse_quant_expr(doc);
    SurfaceExpr::CmpOp op;
    switch (peek().kind) {
      case Tok::Ge: op = SurfaceExpr::CmpOp::Ge; break;
      case Tok::Le: op = SurfaceExpr::CmpOp::Le; break;
      case Tok::Eq: op = SurfaceExpr::CmpOp::Eq; break;
      case Tok::Gt: op = SurfaceExpr::CmpOp::Gt; break;
      case Tok::Lt: op = SurfaceExpr::CmpOp::Lt; break;
      default:
        fail("expected a comparison operator");
    }
    get();
    double bound = parse_signed_number();
    return SurfaceExpr::compare(std::move(quant), op, bound);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

SpecDocument parse_spec(std::string_view text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.run();
}

}  // namespace fairmon::bse
