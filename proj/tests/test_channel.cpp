#include "ssac/channel.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ssac/errors.hpp"
#include "ssac/units.hpp"

using namespace ssac;

namespace {

SceneConfig scene_100m() {
  SceneConfig scene;
  scene.bs_position = {0.0, 0.0, 10.0};
  scene.sensor_position = {0.0, 120.0, 8.0};
  scene.vue_positions = {{0.0, std::sqrt(100.0 * 100.0 - 81.0), 1.0}};  // 100 m from BS
  scene.target_position = {10.0, 60.0, 1.0};
  scene.num_tx_antennas = 8;
  scene.upa_rows = 2;
  scene.upa_cols = 2;
  scene.num_rf_chains = 1;
  scene.num_nlos = 0;
  return scene;
}

}  // namespace

TEST_CASE("line-of-sight channel amplitude matches the pathloss model") {
  SceneConfig scene = scene_100m();
  const GeometryLinks geometry = compute_geometry(scene);
  CHECK(geometry.vues[0].bs_distance == doctest::Approx(100.0).epsilon(1e-12));

  Rng rng(1);
  const ChannelSet set = synth_true_channel(scene, geometry, rng);
  // reference gain -50 dB, exponent 2, 100 m: per-element amplitude 10^-4.5
  const double amp = std::pow(10.0, -4.5);
  for (int i = 0; i < scene.num_tx_antennas; ++i)
    CHECK(std::abs(set.true_h(i, 0)) == doctest::Approx(amp).epsilon(1e-12));
  CHECK(set.true_h.col(0).squaredNorm() ==
        doctest::Approx(1e-5 * 1e-4 * scene.num_tx_antennas).epsilon(1e-12));
  // no multipath: the reconstruction equals the true channel
  CHECK((set.true_h - set.los_h).norm() == 0.0);
}

TEST_CASE("channel synthesis is seed-deterministic") {
  SceneConfig scene = scene_100m();
  scene.num_nlos = 3;
  const GeometryLinks geometry = compute_geometry(scene);
  Rng rng_a(42), rng_b(42), rng_c(43);
  const ChannelSet a = synth_true_channel(scene, geometry, rng_a);
  const ChannelSet b = synth_true_channel(scene, geometry, rng_b);
  const ChannelSet c = synth_true_channel(scene, geometry, rng_c);
  CHECK((a.true_h - b.true_h).norm() == 0.0);
  CHECK((a.nlos_gains - b.nlos_gains).norm() == 0.0);
  CHECK((a.true_h - c.true_h).norm() > 0.0);
}

TEST_CASE("multipath ray powers stay within the configured band") {
  SceneConfig scene = scene_100m();
  scene.num_nlos = 64;
  const GeometryLinks geometry = compute_geometry(scene);
  Rng rng(5);
  const ChannelSet set = synth_true_channel(scene, geometry, rng);
  for (int i = 0; i < scene.num_nlos; ++i) {
    const double p = std::norm(set.nlos_gains(i, 0));
    CHECK(p >= db_to_linear(-10.0) * (1.0 - 1e-12));
    CHECK(p <= db_to_linear(-5.0) * (1.0 + 1e-12));
    CHECK(std::abs(set.nlos_angles(i, 0)) < std::numbers::pi / 2.0);
  }
}

TEST_CASE("reconstruction from exact geometry") {
  SceneConfig scene = scene_100m();
  scene.num_nlos = 3;
  const GeometryLinks geometry = compute_geometry(scene);
  Rng rng(9);
  const ChannelSet set = synth_true_channel(scene, geometry, rng);

  const Eigen::MatrixXcd recon = reconstruct_los_channel(
      scene, {geometry.vues[0].bs_angle}, {geometry.vues[0].bs_distance});
  CHECK((recon - set.los_h).norm() < 1e-15);

  // the reconstruction gap is exactly the multipath sum
  const Eigen::VectorXcd nlos = set.true_h.col(0) - set.los_h.col(0);
  CHECK((set.true_h.col(0) - recon.col(0)).norm() ==
        doctest::Approx(nlos.norm()).epsilon(1e-12));
}

TEST_CASE("angle mismatch decorrelates the reconstruction") {
  SceneConfig scene = scene_100m();
  scene.num_tx_antennas = 16;
  const GeometryLinks geometry = compute_geometry(scene);
  Rng rng(2);
  const ChannelSet set = synth_true_channel(scene, geometry, rng);

  double prev = 1.0;
  for (double delta : {0.0, 0.02, 0.05, 0.1, 0.2}) {
    const Eigen::MatrixXcd recon = reconstruct_los_channel(
        scene, {geometry.vues[0].bs_angle + delta}, {geometry.vues[0].bs_distance});
    const double corr = std::abs(recon.col(0).dot(set.true_h.col(0))) /
                        (recon.col(0).norm() * set.true_h.col(0).norm());
    if (delta == 0.0) {
      CHECK(corr == doctest::Approx(1.0).epsilon(1e-12));
    } else {
      CHECK(corr < prev);
    }
    prev = corr;
  }
}

TEST_CASE("bistatic link matrix is a scaled outer product") {
  const UlaSpec ula{6, 0.5};
  const UpaSpec upa{3, 2, 0.5};
  SensingLinkParams params;
  params.reflection = {3e-4, -4e-4};
  params.azimuth = 0.3;
  params.elevation = 1.2;
  params.bs_angle = -0.5;

  const Eigen::MatrixXcd h = sensing_link_matrix(params, ula, upa);
  REQUIRE(h.rows() == 6);
  REQUIRE(h.cols() == 6);

  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
  CHECK(svd.singularValues()(1) < 1e-12 * svd.singularValues()(0));
  CHECK(h.norm() == doctest::Approx(std::abs(params.reflection) * 6.0).epsilon(1e-12));

  SensingLinkParams doubled = params;
  doubled.reflection *= 2.0;
  CHECK((sensing_link_matrix(doubled, ula, upa) - 2.0 * h).norm() < 1e-15);
}

TEST_CASE("maximum-ratio transmission") {
  SceneConfig scene = scene_100m();
  scene.vue_positions.push_back({30.0, 70.0, 1.0});
  scene.num_rf_chains = 2;
  const GeometryLinks geometry = compute_geometry(scene);
  Rng rng(4);
  const ChannelSet set = synth_true_channel(scene, geometry, rng);

  const double power = 2.5;
  const Eigen::MatrixXcd w = mrt_beamformer(set.los_h, power);
  CHECK(w.squaredNorm() == doctest::Approx(power).epsilon(1e-12));
  CHECK(w.col(0).squaredNorm() == doctest::Approx(power / 2.0).epsilon(1e-12));

  // single user: one beam carries the full budget
  const Eigen::MatrixXcd w1 = mrt_beamformer(set.los_h.leftCols(1), power);
  CHECK(w1.squaredNorm() == doctest::Approx(power).epsilon(1e-12));

  // transmit pattern peaks at each user direction
  const UlaSpec ula{scene.num_tx_antennas, scene.spacing_ratio};
  for (int k = 0; k < 2; ++k) {
    double best_angle = 0.0, best_gain = -1.0;
    for (double deg = -90.0; deg <= 90.0; deg += 0.25) {
      const double gain =
          std::norm(ula_steering(ula, deg_to_rad(deg)).dot(w.col(k)));
      if (gain > best_gain) {
        best_gain = gain;
        best_angle = deg_to_rad(deg);
      }
    }
    CHECK(std::abs(best_angle - geometry.vues[k].bs_angle) < deg_to_rad(1.0));
  }

  CHECK_THROWS_AS(mrt_beamformer(Eigen::MatrixXcd::Zero(4, 1), 1.0), ZeroChannel);
}
