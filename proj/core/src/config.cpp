#include "ssac/config.hpp"

#include <fstream>
#include <sstream>

#include "ssac/errors.hpp"

namespace ssac {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> parts;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, delim)) parts.push_back(trim(item));
  return parts;
}

Eigen::Vector3d parse_vec3(const std::string& text, const std::string& key) {
  const auto parts = parse_double_list(text);
  if (parts.size() != 3)
    throw ConfigError(key + " expects three comma-separated coordinates");
  return {parts[0], parts[1], parts[2]};
}

}  // namespace

bool ParsedConfig::has(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return true;
  return false;
}

const std::string& ParsedConfig::get(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  throw ConfigError("missing required config key: " + key);
}

std::string ParsedConfig::get_or(const std::string& key,
                                 const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

double ParsedConfig::get_double(const std::string& key) const {
  try {
    std::size_t used = 0;
    const double v = std::stod(get(key), &used);
    if (used != get(key).size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("config key is not a number: " + key);
  }
}

double ParsedConfig::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int ParsedConfig::get_int(const std::string& key) const {
  const double v = get_double(key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigError("config key is not an integer: " + key);
  return i;
}

int ParsedConfig::get_int_or(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

ParsedConfig parse_config_text(const std::string& text) {
  ParsedConfig config;
  std::stringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key on line " + std::to_string(line_no));
    config.entries.emplace_back(key, value);
  }
  return config;
}

ParsedConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

SceneConfig scene_from_config(const ParsedConfig& config) {
  SceneConfig scene;
  scene.bs_position = parse_vec3(config.get("bs_position"), "bs_position");
  scene.sensor_position = parse_vec3(config.get("sensor_position"), "sensor_position");
  scene.target_position = parse_vec3(config.get("target_position"), "target_position");

  scene.vue_positions.clear();
  for (const auto& chunk : split(config.get("vue_positions"), ';'))
    if (!chunk.empty()) scene.vue_positions.push_back(parse_vec3(chunk, "vue_positions"));

  scene.num_tx_antennas = config.get_int("tx_antennas");
  const auto upa = parse_int_list(config.get("upa_shape"));
  if (upa.size() != 2) throw ConfigError("upa_shape expects two counts");
  scene.upa_rows = upa[0];
  scene.upa_cols = upa[1];
  scene.num_rf_chains = config.get_int_or("rf_chains", scene.num_vues());
  scene.spacing_ratio = config.get_double_or("spacing_ratio", 0.5);

  scene.power_budget_dbm = config.get_double("power_dbm");
  scene.noise_comm_dbm = config.get_double("noise_comm_dbm");
  scene.noise_radar_dbm = config.get_double("noise_radar_dbm");
  scene.rcs_vue_dbsm = config.get_double_or("rcs_vue_dbsm", 20.0);
  scene.rcs_target_dbsm = config.get_double_or("rcs_target_dbsm", 0.0);
  scene.ref_gain_db = config.get_double_or("ref_gain_db", -50.0);
  scene.pathloss_exp = config.get_double_or("pathloss_exp", 2.0);
  scene.num_nlos = config.get_int_or("nlos_paths", 3);
  scene.snapshots = config.get_int_or("snapshots", 100);
  scene.crlb_threshold_db = config.get_double_or("crlb_threshold_db", -40.0);
  scene.rng_seed = static_cast<std::uint64_t>(config.get_int_or("seed", 1));

  scene.validate();
  return scene;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw ConfigError("not a number in list: '" + part + "'");
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) throw ConfigError("expected integer list");
    out.push_back(i);
  }
  return out;
}

}  // namespace ssac
