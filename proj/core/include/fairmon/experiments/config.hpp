#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fairmon::experiments {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Flat `key = value` configuration text, one pair per line, `#` comments.
/// Keys are unique; values keep their literal spelling so a config echoes
/// back byte-for-byte into manifests.
class Config {
 public:
  static Config parse(std::string_view text);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  int get_int(const std::string& key, int fallback) const;

  /// Rejects any key outside `allowed` (typo guard for experiment configs).
  void restrict_keys(const std::vector<std::string>& allowed) const;

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

  /// Sorted `key=value` lines; the hashing and echo form.
  std::string canonical() const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace fairmon::experiments
