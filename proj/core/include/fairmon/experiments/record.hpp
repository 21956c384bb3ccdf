#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fairmon/monitor/monitor.hpp"

namespace fairmon::experiments {

/// One emitted monitoring record. Optional fields stay empty in CSV and
/// null in JSONL (warm-up rows carry only t/root/tau_mix/run_id plus the
/// `bot` verdict).
struct OutputRecord {
  std::uint64_t t = 0;
  std::string root;
  std::optional<double> point;
  std::optional<double> lo;
  std::optional<double> hi;
  std::optional<double> epsilon;
  std::optional<std::string> verdict;
  double tau_mix = 0.0;
  std::uint64_t run_id = 0;
};

OutputRecord make_record(const monitor::MonitorOutput& out,
                         const std::string& root, double tau_mix,
                         std::uint64_t run_id);

std::string csv_header();
std::string csv_row(const OutputRecord& record);
std::string jsonl_row(const OutputRecord& record);

}  // namespace fairmon::experiments
