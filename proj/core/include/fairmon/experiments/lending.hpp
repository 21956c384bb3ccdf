#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fairmon/bse/spec.hpp"
#include "fairmon/estimation/pac.hpp"
#include "fairmon/experiments/config.hpp"
#include "fairmon/experiments/record.hpp"

namespace fairmon::experiments {

struct LendingConfig {
  std::uint64_t length = 1000000;
  double delta = 0.05;
  double tau_mix = 170589.78;
  std::uint64_t projection_horizon = 10000000000ULL;
  std::uint64_t seed = 20240501;
  double start_self_loop = 0.01;

  static LendingConfig from_config(const Config& config);
};

struct LendingResult {
  LendingConfig config;
  double oracle_phi_dp = 0.0;
  double oracle_phi_tdp = 0.0;
  std::vector<OutputRecord> series;      // monitored checkpoints, both roots
  std::vector<OutputRecord> projection;  // analytic taper past the horizon
  // Wall-clock mean per monitor update over the whole run, by root.
  double mean_update_seconds_phi_dp = 0.0;
  double mean_update_seconds_phi_tdp = 0.0;
  // Final point estimates, for convergence checks.
  double final_point_phi_dp = 0.0;
  double final_point_phi_tdp = 0.0;
};

extern const char kPhiDpSpecText[];
extern const char kPhiTdpSpecText[];

/// One sampled path of the seven-state lending chain feeds both group-gap
/// monitors; checkpoints land on the usual log schedule. The projection
/// freezes every atom's point estimate at the horizon and re-evaluates the
/// composed interval at later times using only the width formula.
LendingResult run_lending(const LendingConfig& config);

/// Writes lending_series.csv, lending_projection.csv, manifest.json and
/// latency.txt (the latter excluded from the byte-identical contract).
/// Returns the deterministic file names.
std::vector<std::string> write_lending_outputs(
    const LendingResult& result, const Config& config_echo,
    const std::filesystem::path& out_dir);

/// Smallest t at which the composed interval half-width of the document's
/// expression drops to `target`, holding every atom at the given point
/// value with its per-atom share of delta. Monotone in t, solved by
/// bracketed bisection on the raw (unclamped) composition.
std::uint64_t smallest_t_for_half_width(
    const bse::SpecDocument& doc, const std::vector<double>& atom_points,
    double target,
    estimation::BoundKind bound = estimation::BoundKind::Printed);

}  // namespace fairmon::experiments
