#pragma once

#include <string_view>

namespace fairmon::monitor {

/// Three-valued qualitative output. Unknown means the confidence interval
/// straddles the decision threshold.
enum class Verdict { True, False, Unknown };

/// Negation leaves Unknown in place.
constexpr Verdict verdict_not(Verdict v) {
  switch (v) {
    case Verdict::True: return Verdict::False;
    case Verdict::False: return Verdict::True;
    case Verdict::Unknown: return Verdict::Unknown;
  }
  return Verdict::Unknown;
}

/// Conjunction with Unknown absorbing both truth values: an Unknown operand
/// makes the result Unknown even against False (deliberately stricter than
/// Kleene logic). Known operands combine classically.
constexpr Verdict verdict_and(Verdict a, Verdict b) {
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  if (a == Verdict::True && b == Verdict::True) return Verdict::True;
  return Verdict::False;
}

/// Disjunction derived from the other two: a || b = !(!a && !b).
constexpr Verdict verdict_or(Verdict a, Verdict b) {
  return verdict_not(verdict_and(verdict_not(a), verdict_not(b)));
}

constexpr std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "bot";
  }
  return "bot";
}

}  // namespace fairmon::monitor
