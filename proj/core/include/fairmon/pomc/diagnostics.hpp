#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairmon/pomc/model.hpp"

namespace fairmon::pomc {

struct ModelDiagnostics {
  bool irreducible = false;
  bool aperiodic = false;
  int period = 1;  // of the recurrent class containing state 0
  std::vector<double> stationary;
  std::optional<double> spectral_gap;       // reversible chains only
  std::optional<double> suggested_tau_mix;  // spectral mixing bound
  std::vector<std::string> warnings;
};

/// Structural validation plus chain analysis: irreducibility from forward
/// and backward reachability, period from breadth-first level differences,
/// stationary distribution by dense solve (small chains) or damped power
/// iteration. Reducible or periodic chains are reported with warnings, not
/// rejected.
ModelDiagnostics validate(const PomcModel& model);

/// Standard spectral upper bound ln(1/(eps_mix * pi_min)) / gap on the
/// mixing time of a reversible chain; refuses non-reversible models (a
/// mixing bound must then come from elsewhere).
double tau_mix_bound_reversible(const PomcModel& model,
                                const std::vector<double>& stationary,
                                double eps_mix = 0.25);

}  // namespace fairmon::pomc
