#include "ssac/scene.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ssac/errors.hpp"
#include "ssac/rng.hpp"
#include "ssac/units.hpp"

using namespace ssac;

namespace {

SceneConfig basic_scene() {
  SceneConfig scene;
  scene.bs_position = {0.0, -10.0, 10.0};
  scene.sensor_position = {0.0, 10.0, 8.0};
  scene.vue_positions = {{-20.0, 0.0, 1.0}, {25.0, 2.0, 1.0}};
  scene.target_position = {8.0, -4.0, 1.0};
  scene.num_tx_antennas = 16;
  scene.upa_rows = 4;
  scene.upa_cols = 4;
  scene.num_rf_chains = 2;
  return scene;
}

}  // namespace

TEST_CASE("unit conversions") {
  CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dbm_to_watt(-80.0) == doctest::Approx(1e-11).epsilon(1e-12));
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));

  // strictly monotone across the integer grid
  double prev = dbm_to_watt(-120.0);
  for (int db = -119; db <= 60; ++db) {
    const double cur = dbm_to_watt(db);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("broadside target geometry") {
  SceneConfig scene = basic_scene();
  scene.target_position = {0.0, 40.0, 10.0};  // 50 m straight ahead of the BS
  const GeometryLinks links = compute_geometry(scene);
  CHECK(links.target.bs_angle == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(links.target.bs_distance == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("localization closed-form example") {
  const Eigen::Vector3d sensor{0.0, 0.0, 0.0};
  const Eigen::Vector3d p =
      localize_from_aoa(0.0, std::numbers::pi / 4.0, sensor, 10.0);
  // slant range 14.1421, dx = 0, dy = 10
  CHECK(p.x() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.y() == doctest::Approx(-10.0).epsilon(1e-9));
  CHECK(p.z() == doctest::Approx(-10.0).epsilon(1e-12));
}

TEST_CASE("localization errors") {
  const Eigen::Vector3d sensor{0.0, 0.0, 0.0};
  CHECK_THROWS_AS(
      localize_from_aoa(std::numbers::pi / 2.0, std::numbers::pi / 4.0, sensor, 10.0),
      NegativeRadicand);
  CHECK_THROWS_AS(localize_from_aoa(0.0, std::numbers::pi / 2.0, sensor, 10.0),
                  DegenerateElevation);
}

TEST_CASE("angle/localization round trip on the target") {
  const SceneConfig scene = basic_scene();
  const GeometryLinks links = compute_geometry(scene);
  const double d_h = scene.sensor_position.z() - scene.target_position.z();
  const Eigen::Vector3d recovered = localize_from_aoa(
      links.target.azimuth, links.target.elevation, scene.sensor_position, d_h);
  CHECK((recovered - scene.target_position).norm() < 1e-9);
}

TEST_CASE("randomized scenes: distances match Euclidean norms, positions recover") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    SceneConfig scene = basic_scene();
    scene.vue_positions.clear();
    for (int k = 0; k < 3; ++k)
      scene.vue_positions.push_back(
          {rng.uniform(-40.0, 40.0), rng.uniform(-5.0, 7.0), rng.uniform(0.5, 2.0)});
    scene.target_position = {rng.uniform(-40.0, 40.0), rng.uniform(-5.0, 7.0),
                             rng.uniform(0.5, 2.0)};

    const GeometryLinks links = compute_geometry(scene);
    for (int k = 0; k < 3; ++k) {
      const auto& link = links.vues[k];
      CHECK(link.bs_distance ==
            doctest::Approx((scene.vue_positions[k] - scene.bs_position).norm())
                .epsilon(1e-12));
      CHECK(link.sensor_distance ==
            doctest::Approx((scene.vue_positions[k] - scene.sensor_position).norm())
                .epsilon(1e-12));
      CHECK(link.azimuth > -std::numbers::pi / 2.0);
      CHECK(link.azimuth < std::numbers::pi / 2.0);
      CHECK(link.elevation > 0.0);
      CHECK(link.elevation < std::numbers::pi);
    }

    const double d_h = scene.sensor_position.z() - scene.target_position.z();
    const Eigen::Vector3d recovered = localize_from_aoa(
        links.target.azimuth, links.target.elevation, scene.sensor_position, d_h);
    CHECK((recovered - scene.target_position).norm() < 1e-9);
  }
}

TEST_CASE("coincident nodes rejected") {
  SceneConfig scene = basic_scene();
  scene.target_position = scene.bs_position;
  CHECK_THROWS_AS(compute_geometry(scene), CoincidentNodes);
}

TEST_CASE("scene validation") {
  SceneConfig scene = basic_scene();
  CHECK_NOTHROW(scene.validate());
  scene.num_rf_chains = 1;  // below K
  CHECK_THROWS_AS(scene.validate(), ConfigError);
  scene = basic_scene();
  scene.vue_positions.clear();
  CHECK_THROWS_AS(scene.validate(), ConfigError);
}
