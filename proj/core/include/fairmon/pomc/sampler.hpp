#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fairmon/pomc/model.hpp"

namespace fairmon::pomc {

/// Stable per-run seed from a master seed: mixes master + run index through
/// a splitmix64 round, so consecutive runs get uncorrelated streams and the
/// mapping is part of the public reproducibility contract.
std::uint64_t derive_run_seed(std::uint64_t master_seed,
                              std::uint64_t run_index);

/// Streaming sampler over a validated model: draws the start state from the
/// given initial distribution (typically the stationary one), then walks
/// the chain, emitting each visited state's observation.
class PathSampler {
 public:
  PathSampler(const PomcModel& model, const std::vector<double>& initial,
              std::uint64_t seed);

  bse::Symbol next_symbol();
  int current_state() const { return state_; }

 private:
  double uniform();  // [0, 1), 53-bit, engine-portable
  int draw_from(const std::vector<double>& cumulative);

  const PomcModel* model_;
  std::vector<double> initial_cumulative_;
  std::vector<std::vector<double>> row_cumulative_;
  std::mt19937_64 rng_;
  int state_ = -1;  // -1 until the first draw
};

/// Materialized observation sequence of the given length.
std::vector<bse::Symbol> sample_path(const PomcModel& model,
                                     const std::vector<double>& initial,
                                     std::uint64_t length,
                                     std::uint64_t seed);

}  // namespace fairmon::pomc
