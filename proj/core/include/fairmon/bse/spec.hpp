#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fairmon/bse/ast.hpp"
#include "fairmon/bse/surface.hpp"

namespace fairmon::bse {

/// A validated specification document: alphabet, atom declarations, the
/// confidence/mixing parameters, and one top-level expression kept both as
/// written (surface) and fully desugared (core, with derived atoms for
/// every P(...) sub-expression).
struct SpecDocument {
  Alphabet alphabet;
  std::vector<AtomPtr> declared_atoms;  // declaration order
  double delta = 0.0;                   // global failure probability, in (0,1)
  double tau_mix = 0.0;                 // mixing-time bound, > 0

  bool is_qual = false;
  SurfacePtr surface;    // top-level expression as parsed

  QuantPtr quant_root;   // set when !is_qual
  QualPtr qual_root;     // set when is_qual
  std::vector<AtomPtr> atoms;  // declared + derived, registration order

  /// Unique atoms of the monitored expression (structural dedup).
  std::vector<AtomPtr> unique_atoms() const;
};

bool structurally_equal(const SpecDocument& a, const SpecDocument& b);

/// Parse and validate a spec document. Errors carry line/column.
SpecDocument parse_spec(std::string_view text);

/// Canonical text form; parse_spec(pretty_print(d)) is structurally
/// identical to d.
std::string pretty_print(const SpecDocument& doc);

}  // namespace fairmon::bse
