// Shared scenario fixtures for the test suites.
#pragma once

#include "ssac/scene.hpp"

namespace test_scenes {

// Small instance for optimizer unit tests: 8-antenna BS, 2x2 sensing array.
inline ssac::SceneConfig mini() {
  ssac::SceneConfig scene;
  scene.bs_position = {0.0, -10.0, 10.0};
  scene.sensor_position = {0.0, 10.0, 8.0};
  scene.vue_positions = {{-15.0, 0.0, 1.0}, {20.0, 3.0, 1.0}};
  scene.target_position = {6.0, -3.0, 1.0};
  scene.num_tx_antennas = 8;
  scene.upa_rows = 2;
  scene.upa_cols = 2;
  scene.num_rf_chains = 2;
  scene.num_nlos = 0;
  scene.snapshots = 32;
  scene.crlb_threshold_db = -25.0;
  return scene;
}

// Bench-scale instance: 16-antenna BS, 4x4 sensing array, two users.
inline ssac::SceneConfig desk(bool multipath = true) {
  ssac::SceneConfig scene;
  scene.bs_position = {0.0, -10.0, 10.0};
  scene.sensor_position = {0.0, 10.0, 8.0};
  scene.vue_positions = {{-20.0, 0.0, 1.0}, {25.0, 2.0, 1.0}};
  scene.target_position = {8.0, -4.0, 1.0};
  scene.num_tx_antennas = 16;
  scene.upa_rows = 4;
  scene.upa_cols = 4;
  scene.num_rf_chains = 2;
  scene.num_nlos = multipath ? 3 : 0;
  scene.snapshots = 100;
  scene.crlb_threshold_db = -40.0;
  return scene;
}

}  // namespace test_scenes
