#include "fairmon/experiments/manifest.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

#include "fairmon/version.hpp"

namespace fairmon::experiments {

std::uint64_t fnv1a_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_manifest(const std::filesystem::path& dir,
                    const std::string& experiment, std::uint64_t seed,
                    const Config& config,
                    const std::vector<std::string>& files) {
  char hash_hex[17];
  std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                static_cast<unsigned long long>(
                    fnv1a_hash(config.canonical())));

  nlohmann::ordered_json manifest;
  manifest["experiment"] = experiment;
  manifest["version"] = kVersion;
  manifest["seed"] = seed;
  manifest["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config.entries()) {
    manifest["config"][key] = value;
  }
  manifest["config_hash"] = std::string("fnv1a:") + hash_hex;
  manifest["files"] = files;

  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write " + (dir / "manifest.json").string());
  }
  out << manifest.dump(2) << "\n";
}

}  // namespace fairmon::experiments
