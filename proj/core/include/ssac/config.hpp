#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ssac/scene.hpp"

namespace ssac {

/// Flat key-value view of a scenario file: `key = value` lines, `#` comments,
/// insertion order preserved for echoing into run summaries.
struct ParsedConfig {
  std::vector<std::pair<std::string, std::string>> entries;

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;  // throws ConfigError
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int_or(const std::string& key, int fallback) const;
};

ParsedConfig parse_config_text(const std::string& text);
ParsedConfig load_config_file(const std::string& path);

/// Builds and validates the scene block of a config. Positions are meters
/// ("x, y, z"; users separated by ';'), powers dBm/dB, angles degrees.
SceneConfig scene_from_config(const ParsedConfig& config);

/// Comma-separated doubles / integers.
std::vector<double> parse_double_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace ssac
