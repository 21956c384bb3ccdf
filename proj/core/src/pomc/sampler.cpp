#include "fairmon/pomc/sampler.hpp"

namespace fairmon::pomc {

std::uint64_t derive_run_seed(std::uint64_t master_seed,
                              std::uint64_t run_index) {
  std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (run_index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PathSampler::PathSampler(const PomcModel& model,
                         const std::vector<double>& initial,
                         std::uint64_t seed)
    : model_(&model), rng_(seed) {
  if (static_cast<int>(initial.size()) != model.state_count) {
    throw ModelError("initial distribution size mismatch");
  }
  initial_cumulative_.reserve(initial.size());
  double acc = 0.0;
  for (double p : initial) {
    acc += p;
    initial_cumulative_.push_back(acc);
  }
  row_cumulative_.resize(model.state_count);
  for (int q = 0; q < model.state_count; ++q) {
    acc = 0.0;
    row_cumulative_[q].reserve(model.rows[q].size());
    for (const auto& [to, p] : model.rows[q]) {
      acc += p;
      row_cumulative_[q].push_back(acc);
    }
  }
}

double PathSampler::uniform() {
  // Top 53 bits of the engine output; identical on every platform, unlike
  // std::uniform_real_distribution.
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

int PathSampler::draw_from(const std::vector<double>& cumulative) {
  const double u = uniform();
  for (std::size_t i = 0; i + 1 < cumulative.size(); ++i) {
    if (u < cumulative[i]) return static_cast<int>(i);
  }
  return static_cast<int>(cumulative.size()) - 1;
}

bse::Symbol PathSampler::next_symbol() {
  if (state_ < 0) {
    state_ = draw_from(initial_cumulative_);
  } else {
    const int k = draw_from(row_cumulative_[state_]);
    state_ = model_->rows[state_][k].first;
  }
  return model_->labels[state_];
}

std::vector<bse::Symbol> sample_path(const PomcModel& model,
                                     const std::vector<double>& initial,
                                     std::uint64_t length,
                                     std::uint64_t seed) {
  PathSampler sampler(model, initial, seed);
  std::vector<bse::Symbol> out;
  out.reserve(length);
  for (std::uint64_t i = 0; i < length; ++i) {
    out.push_back(sampler.next_symbol());
  }
  return out;
}

}  // namespace fairmon::pomc
