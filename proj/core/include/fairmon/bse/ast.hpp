#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fairmon::bse {

/// Index into an Alphabet; kWildcard matches any symbol in a table pattern.
using Symbol = int;
inline constexpr Symbol kWildcard = -1;

/// A finite observation word (sequence of alphabet symbols).
using Word = std::vector<Symbol>;

/// Error raised while parsing or validating a specification document.
/// Carries the 1-based source position of the offending token.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& message, int line, int column)
      : std::runtime_error(message + " (line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  /// Error with no usable source position (e.g. raised after parsing).
  explicit SpecError(const std::string& message)
      : std::runtime_error(message), line_(0), column_(0) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Raised when an observation token is not part of the declared alphabet.
class UnknownTokenError : public std::runtime_error {
 public:
  explicit UnknownTokenError(std::string_view token)
      : std::runtime_error("unknown observation token: " +
                           std::string(token)),
        token_(token) {}

  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

/// The finite observation alphabet of a specification. Tokens are compared
/// by exact string equality and kept in declaration order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> tokens);

  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& token(Symbol s) const { return tokens_.at(s); }

  std::optional<Symbol> find(std::string_view token) const;
  Symbol require(std::string_view token) const;  // throws UnknownTokenError

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Symbol> index_;
};

/// One pattern -> value row of an atomic-function table. A pattern position
/// holding kWildcard matches any symbol.
struct TableEntry {
  Word pattern;
  double value = 0.0;

  friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

/// A bounded window function f: Sigma^n -> [lower, upper], the unit of
/// estimation. Evaluation is total: the most specific matching table entry
/// wins (ties broken by declaration order), and the default value covers
/// windows with no matching entry.
class AtomicFunction {
 public:
  AtomicFunction(std::string name, int arity, double lower, double upper,
                 std::vector<TableEntry> entries, double default_value);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double range_width() const { return upper_ - lower_; }
  const std::vector<TableEntry>& entries() const { return entries_; }
  double default_value() const { return default_value_; }

  double eval(std::span<const Symbol> window) const;

  /// Structural identity: same arity, bounds, and table. Names are ignored;
  /// two identically shaped atoms denote the same estimable quantity.
  bool same_structure(const AtomicFunction& other) const;

 private:
  std::string name_;
  int arity_;
  double lower_;
  double upper_;
  std::vector<TableEntry> entries_;
  double default_value_;
};

using AtomPtr = std::shared_ptr<const AtomicFunction>;

// ---------------------------------------------------------------------------
// Core (desugared) expression ASTs.
// ---------------------------------------------------------------------------

struct QuantExpr;
using QuantPtr = std::shared_ptr<const QuantExpr>;

/// Core quantitative expression: constants, atoms, +, *, and reciprocal.
/// Subtraction, negation and division exist only in the surface syntax.
struct QuantExpr {
  enum class Kind { Constant, Atom, Add, Mul, Inv };

  Kind kind;
  double constant = 0.0;  // Kind::Constant
  AtomPtr atom;           // Kind::Atom
  QuantPtr lhs, rhs;      // Add/Mul children; Inv uses lhs only

  static QuantPtr make_constant(double v);
  static QuantPtr make_atom(AtomPtr atom);
  static QuantPtr make_add(QuantPtr l, QuantPtr r);
  static QuantPtr make_mul(QuantPtr l, QuantPtr r);
  static QuantPtr make_inv(QuantPtr x);
};

struct QualExpr;
using QualPtr = std::shared_ptr<const QualExpr>;

/// Core qualitative expression: true, phi >= 0, negation, conjunction.
struct QualExpr {
  enum class Kind { True, Geq0, Not, And };

  Kind kind;
  QuantPtr quant;     // Kind::Geq0
  QualPtr lhs, rhs;   // Not uses lhs; And uses both

  static QualPtr make_true();
  static QualPtr make_geq0(QuantPtr q);
  static QualPtr make_not(QualPtr x);
  static QualPtr make_and(QualPtr l, QualPtr r);
};

bool structurally_equal(const QuantExpr& a, const QuantExpr& b);
bool structurally_equal(const QualExpr& a, const QualExpr& b);

/// Deduplicated atoms of an expression, by structural identity, ordered by
/// first occurrence in a depth-first traversal. Drives delta allocation.
std::vector<AtomPtr> collect_atoms(const QuantExpr& root);
std::vector<AtomPtr> collect_atoms(const QualExpr& root);

}  // namespace fairmon::bse
