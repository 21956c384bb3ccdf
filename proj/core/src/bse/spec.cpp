#include "fairmon/bse/spec.hpp"

namespace fairmon::bse {

std::vector<AtomPtr> SpecDocument::unique_atoms() const {
  if (is_qual) return collect_atoms(*qual_root);
  return collect_atoms(*quant_root);
}

bool structurally_equal(const SpecDocument& a, const SpecDocument& b) {
  if (!(a.alphabet == b.alphabet)) return false;
  if (a.declared_atoms.size() != b.declared_atoms.size()) return false;
  for (std::size_t i = 0; i < a.declared_atoms.size(); ++i) {
    const AtomicFunction& x = *a.declared_atoms[i];
    const AtomicFunction& y = *b.declared_atoms[i];
    if (x.name() != y.name() || !x.same_structure(y)) return false;
  }
  if (a.delta != b.delta || a.tau_mix != b.tau_mix) return false;
  if (a.is_qual != b.is_qual) return false;
  return structurally_equal(*a.surface, *b.surface);
}

}  // namespace fairmon::bse
