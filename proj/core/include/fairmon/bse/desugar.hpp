#pragma once

#include <vector>

#include "fairmon/bse/ast.hpp"
#include "fairmon/bse/surface.hpp"

namespace fairmon::bse {

/// Indicator atom of the upward extension of S to its maximum word length n:
/// arity n, bounds [0,1], value 1 exactly on windows that extend some word
/// of S. Words are deduplicated and sorted, so structurally equal sets
/// produce structurally equal atoms.
AtomPtr make_sequence_prob_atom(const std::vector<Word>& s, std::string name);

/// Conditional probability P(S | T) = P(TS) / P(T) as a core expression:
/// Mul(Atom(indicator of TS), Inv(Atom(indicator of T))), with both
/// indicators padded to arity maxlen(T) + maxlen(S). The two generated
/// atoms are appended to `registry`.
QuantPtr make_conditional_expr(const std::vector<Word>& s,
                               const std::vector<Word>& t,
                               std::vector<AtomPtr>& registry);

/// Rewrites surface sugar (-, unary -, /, comparisons against constants,
/// ||) into core-shaped surface nodes. Idempotent: a second application is
/// a structural no-op.
SurfacePtr expand_sugar(const SurfacePtr& e);

/// Lowers a core-shaped surface tree to the core AST, resolving atom
/// references against `declared` and generating indicator atoms for every
/// P(...) node into `registry`.
QuantPtr lower_quant(const SurfacePtr& e, const std::vector<AtomPtr>& declared,
                     std::vector<AtomPtr>& registry);
QualPtr lower_qual(const SurfacePtr& e, const std::vector<AtomPtr>& declared,
                   std::vector<AtomPtr>& registry);

}  // namespace fairmon::bse
