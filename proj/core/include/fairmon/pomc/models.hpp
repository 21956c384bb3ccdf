#pragma once

#include "fairmon/pomc/model.hpp"

namespace fairmon::pomc {

/// Lazy random walk on the {0,1}^dim hypercube: stay with probability 1/2,
/// otherwise flip a uniformly chosen coordinate. Observation "a" on the
/// half with first bit 0, "b" on the other half. dim in [1, 20].
PomcModel hypercube_model(int dim);

/// Parameters of the seven-state lending chain: a start state that
/// self-loops, two applicant groups with two credit-score tiers each, and
/// grant/reject outcomes that return to start. `select[g][s]` is the
/// probability, conditional on leaving start, of drawing group g with
/// score s (the four entries sum to one); `grant[g][s]` is the approval
/// probability for that pair.
struct LendingParams {
  double start_self_loop = 0.01;
  double select[2][2] = {{0.40, 0.45}, {0.10, 0.05}};
  double grant[2][2] = {{0.25, 0.45}, {0.15, 0.35}};
};

/// States: S, (A,1), (A,2), (B,1), (B,2), Y, N with observations
/// S A A B B Y N over alphabet {S, A, B, Y, N}.
PomcModel lending_model(const LendingParams& params = {});

}  // namespace fairmon::pomc
