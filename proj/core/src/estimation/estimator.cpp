#include "fairmon/estimation/estimator.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

namespace fairmon::estimation {

AtomEstimator::AtomEstimator(bse::AtomPtr atom)
    : atom_(std::move(atom)),
      arity_(atom_->arity()),
      ring_(arity_, 0),
      scratch_(arity_, 0) {}

void AtomEstimator::update(bse::Symbol symbol) {
  ring_[count_ % arity_] = symbol;
  ++count_;
  if (count_ < static_cast<std::uint64_t>(arity_)) return;

  // Oldest window element sits at the next write position.
  const std::uint64_t start = count_ % arity_;
  for (int i = 0; i < arity_; ++i) {
    scratch_[i] = ring_[(start + i) % arity_];
  }
  const double x = atom_->eval(scratch_);
  const double windows_before = static_cast<double>(count_ - arity_);
  value_ = (value_ * windows_before + x) / (windows_before + 1.0);
}

void AtomEstimator::reset() {
  count_ = 0;
  value_ = 0.0;
}

std::vector<bse::Symbol> AtomEstimator::window_contents() const {
  const int filled =
      static_cast<int>(std::min<std::uint64_t>(count_, arity_));
  std::vector<bse::Symbol> out(filled);
  for (int i = 0; i < filled; ++i) {
    out[i] = ring_[(count_ - filled + i) % arity_];
  }
  return out;
}

void AtomEstimator::restore(std::uint64_t count, double value,
                            const std::vector<bse::Symbol>& window) {
  const std::uint64_t expected = std::min<std::uint64_t>(count, arity_);
  if (window.size() != expected) {
    throw std::invalid_argument("window size does not match event count");
  }
  count_ = count;
  value_ = value;
  for (std::uint64_t i = 0; i < window.size(); ++i) {
    ring_[(count_ - window.size() + i) % arity_] = window[i];
  }
}

}  // namespace fairmon::estimation
