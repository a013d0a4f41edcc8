#include "ssac/scene.hpp"

#include <cmath>
#include <string>

#include "ssac/errors.hpp"

namespace ssac {

void SceneConfig::validate() const {
  if (num_vues() < 1) throw ConfigError("scene needs at least one VUE");
  if (num_tx_antennas < num_vues())
    throw ConfigError("tx antennas must be >= number of VUEs");
  if (num_rf_chains < num_vues() || num_rf_chains > num_tx_antennas)
    throw ConfigError("rf chains must satisfy K <= N_rf <= M");
  if (upa_rows < 1 || upa_cols < 1) throw ConfigError("upa shape must be positive");
  if (snapshots < 1) throw ConfigError("snapshots must be >= 1");
  if (spacing_ratio <= 0.0) throw ConfigError("spacing ratio must be positive");
  auto finite = [](const Eigen::Vector3d& p) { return p.allFinite(); };
  if (!finite(bs_position) || !finite(sensor_position) || !finite(target_position))
    throw ConfigError("positions must be finite");
  for (const auto& p : vue_positions)
    if (!finite(p)) throw ConfigError("positions must be finite");
}

namespace {

LinkGeometry link_for(const Eigen::Vector3d& bs, const Eigen::Vector3d& sensor,
                      const Eigen::Vector3d& node, const char* label) {
  LinkGeometry link;
  link.bs_distance = (node - bs).norm();
  link.sensor_distance = (sensor - node).norm();
  if (link.bs_distance <= 0.0 || link.sensor_distance <= 0.0)
    throw CoincidentNodes(std::string(label) + " coincides with the BS or the sensor");

  // Departure angle at the linear array (array along x, broadside +y).
  link.bs_angle = std::asin((node.x() - bs.x()) / link.bs_distance);

  // Arrival angles at the planar array, displacement sensor - node.
  const Eigen::Vector3d delta = sensor - node;
  const double range = delta.norm();
  link.elevation = std::acos(delta.z() / range);
  link.azimuth = std::asin(delta.x() / range);
  return link;
}

}  // namespace

GeometryLinks compute_geometry(const SceneConfig& scene) {
  GeometryLinks links;
  links.vues.reserve(scene.vue_positions.size());
  for (const auto& p : scene.vue_positions)
    links.vues.push_back(link_for(scene.bs_position, scene.sensor_position, p, "VUE"));
  links.target =
      link_for(scene.bs_position, scene.sensor_position, scene.target_position, "target");
  return links;
}

Eigen::Vector3d localize_from_aoa(double azimuth, double elevation,
                                  const Eigen::Vector3d& sensor_position,
                                  double height_diff) {
  const double cos_el = std::cos(elevation);
  if (std::abs(cos_el) < 1e-9)
    throw DegenerateElevation("elevation too close to horizontal for range recovery");
  const double range = height_diff / cos_el;
  const double dx = range * std::sin(azimuth);
  const double radicand = range * range - dx * dx - height_diff * height_diff;
  if (radicand < 0.0)
    throw NegativeRadicand("angles inconsistent with the known height difference");
  const double dy = std::sqrt(radicand);
  return sensor_position - Eigen::Vector3d(dx, dy, height_diff);
}

}  // namespace ssac
