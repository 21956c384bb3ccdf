#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fairmon/experiments/config.hpp"

namespace fairmon::experiments {

struct HypercubeConfig {
  int runs = 100;
  std::uint64_t length = 100000;
  double delta = 0.05;
  double tau_low = 7.45;    // spectral-gap bound for the dim-3 walk
  double tau_high = 204.94; // pessimistic bound
  std::uint64_t seed = 20240501;
  int threads = 0;          // 0 = hardware concurrency

  static HypercubeConfig from_config(const Config& config);
};

/// Cross-run aggregate at one checkpoint for one mixing-time bound.
struct HypercubeSummaryRow {
  std::uint64_t t = 0;
  double tau_mix = 0.0;
  double point_min = 0.0;
  double point_max = 0.0;
  double lo_env = 0.0;  // outermost interval boundaries across runs
  double hi_env = 0.0;
  double epsilon = 0.0; // per-atom half-width, identical across runs
};

struct HypercubeSpecResult {
  std::string name;
  double oracle = 0.0;
  std::vector<HypercubeSummaryRow> rows;  // ordered by (t, tau_mix)
  // Runs whose final interval contains the oracle value, per bound.
  int coverage_tau_low = 0;
  int coverage_tau_high = 0;
};

struct HypercubeResult {
  HypercubeConfig config;
  HypercubeSpecResult psi_dp;
  HypercubeSpecResult psi_tdp;
};

/// The two window-pair property documents monitored by this experiment
/// (canonical text; the conditional and joint variants of the a-vs-b
/// favorable-observation gap).
extern const char kPsiDpSpecText[];
extern const char kPsiTdpSpecText[];

/// Samples `runs` stationary paths of the dim-3 hypercube walk, streams
/// each through four monitors (two documents x two mixing-time bounds),
/// and reduces per-checkpoint extrema deterministically. Runs execute in
/// parallel on independent seeded streams.
HypercubeResult run_hypercube(const HypercubeConfig& config);

/// Writes psi_dp_summary.csv, psi_tdp_summary.csv and manifest.json.
/// Returns the file names written.
std::vector<std::string> write_hypercube_outputs(
    const HypercubeResult& result, const Config& config_echo,
    const std::filesystem::path& out_dir);

}  // namespace fairmon::experiments
