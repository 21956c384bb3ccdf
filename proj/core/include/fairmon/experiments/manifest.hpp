#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fairmon/experiments/config.hpp"

namespace fairmon::experiments {

/// FNV-1a over the bytes; stable across platforms.
std::uint64_t fnv1a_hash(std::string_view bytes);

/// Writes `manifest.json` into `dir`: experiment name, toolkit version,
/// seed, config echo, FNV-1a hash of the canonical config, and the list of
/// emitted files. Content is deterministic for a given (seed, config).
void write_manifest(const std::filesystem::path& dir,
                    const std::string& experiment, std::uint64_t seed,
                    const Config& config,
                    const std::vector<std::string>& files);

}  // namespace fairmon::experiments
