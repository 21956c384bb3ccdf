#include "fairmon/pomc/model.hpp"

#include <cmath>

namespace fairmon::pomc {

double PomcModel::prob(int from, int to) const {
  for (const auto& [dest, p] : rows[from]) {
    if (dest == to) return p;
  }
  return 0.0;
}

void PomcModel::check() const {
  if (state_count < 1) throw ModelError("model needs at least one state");
  if (static_cast<int>(rows.size()) != state_count ||
      static_cast<int>(labels.size()) != state_count) {
    throw ModelError("transition/label tables do not match the state count");
  }
  for (int q = 0; q < state_count; ++q) {
    double sum = 0.0;
    int last_to = -1;
    for (const auto& [to, p] : rows[q]) {
      if (to < 0 || to >= state_count) {
        throw ModelError("transition target out of range from state " +
                         std::to_string(q));
      }
      if (to <= last_to) {
        throw ModelError("transitions from state " + std::to_string(q) +
                         " must be sorted and unique");
      }
      last_to = to;
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ModelError("transition probability outside [0,1] from state " +
                         std::to_string(q));
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw ModelError("row " + std::to_string(q) +
                       " does not sum to 1 (got " + std::to_string(sum) +
                       ")");
    }
    if (labels[q] < 0 || labels[q] >= alphabet.size()) {
      throw ModelError("state " + std::to_string(q) +
                       " has no valid observation label");
    }
  }
  if (!init.empty()) {
    if (static_cast<int>(init.size()) != state_count) {
      throw ModelError("initial distribution size mismatch");
    }
    double sum = 0.0;
    for (double p : init) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ModelError("initial probability outside [0,1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw ModelError("initial distribution does not sum to 1");
    }
  }
}

PomcModel relabel_to(const PomcModel& model, const bse::Alphabet& target) {
  PomcModel out = model;
  out.alphabet = target;
  for (int q = 0; q < model.state_count; ++q) {
    out.labels[q] = target.require(model.alphabet.token(model.labels[q]));
  }
  return out;
}

}  // namespace fairmon::pomc
