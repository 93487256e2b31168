#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rowcrop/metrics.hpp"
#include "rowcrop/scenario.hpp"
#include "rowcrop/world_sim.hpp"

using namespace rowcrop;

TEST_CASE("generate_world places floor(L/s)+1 plants per row") {
  WorldSpec spec;
  spec.row_length = 8.0;
  spec.plant_spacing = 0.5;
  spec.plant_radius_jitter = 0.0;
  spec.dropout_rate = 0.0;
  const World world = generate_world(spec);
  CHECK(world.plants.size() == 2 * 17);
  for (const Plant& p : world.plants) {
    CHECK(std::abs(p.y) == doctest::Approx(spec.row_spacing / 2.0));
    CHECK(p.x >= 0.0);
    CHECK(p.x <= 8.0 + 1e-12);
    CHECK(p.radius == spec.plant_radius_mean);
  }
}

TEST_CASE("generate_world is deterministic per seed") {
  WorldSpec spec;
  spec.seed = 1234;
  spec.dropout_rate = 0.3;
  const World a = generate_world(spec);
  const World b = generate_world(spec);
  REQUIRE(a.plants.size() == b.plants.size());
  for (std::size_t k = 0; k < a.plants.size(); ++k) {
    CHECK(a.plants[k].x == b.plants[k].x);
    CHECK(a.plants[k].y == b.plants[k].y);
    CHECK(a.plants[k].radius == b.plants[k].radius);
  }
}

TEST_CASE("dropout only removes plants") {
  WorldSpec spec;
  spec.seed = 99;
  const std::size_t full = generate_world(spec).plants.size();
  spec.dropout_rate = 0.99;
  CHECK(generate_world(spec).plants.size() <= full);
}

TEST_CASE("world spec validation") {
  WorldSpec bad;
  bad.row_length = 0.0;
  CHECK_THROWS_AS(generate_world(bad), std::invalid_argument);
  bad = WorldSpec{};
  bad.dropout_rate = 1.0;
  CHECK_THROWS_AS(generate_world(bad), std::invalid_argument);
}

TEST_CASE("render of an empty world") {
  World world;
  world.row_length = 8.0;
  world.row_spacing = 1.5;
  const auto [mask, depth] = render(world, {}, CameraModel{}, 0, 0.0);
  for (auto v : mask.data) CHECK(v == 0);
  for (auto v : depth.data) CHECK(v == DepthFrame::kNoReturn);
}

TEST_CASE("render a single plant dead ahead") {
  const double range = 3.0;
  World world;
  world.row_length = 8.0;
  world.row_spacing = 1.5;
  world.plants.push_back({range, 0.0, 0.2, 0.3});

  CameraModel cam;
  const auto [mask, depth] = render(world, {}, cam, 0, 0.0);

  const ColumnHistogram hist = column_histogram(mask);
  int first = -1, last = -1;
  for (int j = 0; j < cam.width; ++j) {
    if (hist.bins[j] > 0) {
      if (first < 0) first = j;
      last = j;
    }
  }
  REQUIRE(first >= 0);
  // vegetation centered on the image center
  CHECK((first + last + 1) / 2.0 == doctest::Approx(cam.width / 2.0).epsilon(0.02));
  // depth at the hit pixels is near the disc front face
  for (int j = first; j <= last; ++j) {
    for (int i = 0; i < cam.height; ++i) {
      if (mask.at(i, j)) {
        CHECK(depth.at(i, j) >= range - 0.21);
        CHECK(depth.at(i, j) <= range);
      }
    }
  }
}

TEST_CASE("render centered in a symmetric world is mirror symmetric") {
  WorldSpec spec;
  spec.plant_radius_jitter = 0.0;
  spec.dropout_rate = 0.0;
  const World world = generate_world(spec);
  CameraModel cam;
  const auto [mask, depth] = render(world, {1.0, 0.0, 0.0}, cam, 0, 0.0);

  for (int i = 0; i < cam.height; ++i) {
    for (int j = 0; j < cam.width; ++j) {
      CHECK(mask.at(i, j) == mask.at(i, cam.width - 1 - j));
    }
  }

  const auto clusters = find_zero_clusters(column_histogram(mask));
  REQUIRE(!clusters.empty());
  const auto widest = *std::max_element(
      clusters.begin(), clusters.end(),
      [](const GapCluster& a, const GapCluster& b) {
        return a.width() < b.width();
      });
  CHECK(widest.center() == doctest::Approx(cam.width / 2.0));
}

TEST_CASE("render depth properties before noise") {
  WorldSpec spec;
  const World world = generate_world(spec);
  CameraModel cam;
  const auto [mask, depth] = render(world, {0.5, 0.1, 0.05}, cam, 0, 0.0);
  for (std::size_t p = 0; p < mask.data.size(); ++p) {
    if (mask.data[p]) {
      CHECK(depth.data[p] <= cam.max_range);
    } else {
      CHECK(depth.data[p] == DepthFrame::kNoReturn);
    }
  }
}

TEST_CASE("render noise stream is seeded and deterministic") {
  const World world = generate_world(WorldSpec{});
  CameraModel cam;
  const auto [m1, d1] = render(world, {}, cam, 7, 0.02);
  const auto [m2, d2] = render(world, {}, cam, 7, 0.02);
  const auto [m3, d3] = render(world, {}, cam, 8, 0.02);
  CHECK(m1.data == m2.data);
  CHECK(m1.data != m3.data);
}

TEST_CASE("kinematics_step basics") {
  SUBCASE("zero command leaves pose unchanged") {
    const RobotPose p = kinematics_step({1.0, 2.0, 0.5}, {0.0, 0.0}, 0.1);
    CHECK(p.x == 1.0);
    CHECK(p.y == 2.0);
    CHECK(p.theta == 0.5);
  }
  SUBCASE("straight-line motion") {
    const RobotPose p = kinematics_step({0.0, 0.0, 0.0}, {1.0, 0.0}, 0.1);
    CHECK(p.x == doctest::Approx(0.1));
    CHECK(p.y == 0.0);
    CHECK(p.theta == 0.0);
  }
  SUBCASE("pure rotation by pi") {
    const RobotPose p = kinematics_step({0.0, 0.0, 0.0}, {0.0, M_PI}, 1.0);
    CHECK(p.x == 0.0);
    CHECK(p.y == 0.0);
    CHECK(std::abs(p.theta) == doctest::Approx(M_PI));
  }
  SUBCASE("theta stays normalized") {
    RobotPose p{0.0, 0.0, 3.0};
    for (int k = 0; k < 100; ++k) {
      p = kinematics_step(p, {0.3, 2.5}, 0.1);
      CHECK(p.theta > -M_PI);
      CHECK(p.theta <= M_PI);
      CHECK(std::isfinite(p.x));
      CHECK(std::isfinite(p.y));
    }
  }
}

TEST_CASE("run_episode nominal reaches the end of the row") {
  const Scenario scenario = nominal_scenario();
  const SimRun run = scenario.make_run(0);
  const EpisodeResult result = run_episode(run);
  CHECK(result.termination == Termination::EndOfRowReached);
  REQUIRE(!result.trajectory.empty());
  const RobotPose final_pose = result.trajectory.back().pose;
  CHECK(final_pose.x > run.world.row_length - run.end_of_row_margin);
}

TEST_CASE("run_episode trajectory timestamps advance by dt") {
  const Scenario scenario = nominal_scenario();
  const SimRun run = scenario.make_run(0);
  const EpisodeResult result = run_episode(run);
  for (std::size_t k = 0; k < result.trajectory.size(); ++k) {
    CHECK(result.trajectory[k].t == doctest::Approx(k * run.dt));
  }
}

TEST_CASE("run_episode is deterministic") {
  Scenario scenario = nominal_scenario();
  scenario.world.dropout_rate = 0.05;
  scenario.world.mask_noise_rate = 0.01;
  const SimRun run = scenario.make_run(1);
  const EpisodeResult a = run_episode(run);
  const EpisodeResult b = run_episode(run);
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  CHECK(a.termination == b.termination);
  for (std::size_t k = 0; k < a.trajectory.size(); ++k) {
    CHECK(a.trajectory[k].pose.x == b.trajectory[k].pose.x);
    CHECK(a.trajectory[k].pose.y == b.trajectory[k].pose.y);
    CHECK(a.trajectory[k].pose.theta == b.trajectory[k].pose.theta);
  }
}

TEST_CASE("run_episode edge terminations") {
  Scenario scenario = nominal_scenario();

  SUBCASE("max_steps 0 gives an empty StepLimit episode") {
    SimRun run = scenario.make_run(0);
    run.max_steps = 0;
    const EpisodeResult result = run_episode(run);
    CHECK(result.termination == Termination::StepLimit);
    CHECK(result.trajectory.empty());
  }

  SUBCASE("starting inside a plant collides at step 0") {
    SimRun run = scenario.make_run(0);
    run.start_pose = {0.0, run.world.row_spacing / 2.0, 0.0};
    const EpisodeResult result = run_episode(run);
    CHECK(result.termination == Termination::Collision);
    CHECK(result.trajectory.empty());
  }

  SUBCASE("collision termination implies proximity to a plant") {
    SimRun run = scenario.make_run(0);
    run.start_pose = {0.0, 0.2, 0.3};  // aimed at the upper row
    run.controller.omega_z_max = 1e-6;
    const World world = generate_world(run.world);
    const EpisodeResult result = run_episode(run, world);
    REQUIRE(result.termination == Termination::Collision);
    REQUIRE(!result.trajectory.empty());
    const TrajectorySample& last = result.trajectory.back();
    CHECK(in_collision(world, kinematics_step(last.pose, last.cmd, run.dt),
                       run.collision_radius));
  }
}

TEST_CASE("mirrored world yields the mirrored trajectory") {
  Scenario scenario = nominal_scenario();
  SimRun run = scenario.make_run(0);
  run.start_pose = {0.0, 0.08, -0.05};

  const World world = generate_world(run.world);
  const World mirrored = mirror_world(world);

  SimRun mirrored_run = run;
  mirrored_run.start_pose = {run.start_pose.x, -run.start_pose.y,
                             -run.start_pose.theta};

  const EpisodeResult a = run_episode(run, world);
  const EpisodeResult b = run_episode(mirrored_run, mirrored);
  CHECK(a.termination == b.termination);
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  for (std::size_t k = 0; k < a.trajectory.size(); ++k) {
    CHECK(std::abs(a.trajectory[k].pose.y + b.trajectory[k].pose.y) < 1e-9);
    CHECK(std::abs(a.trajectory[k].pose.theta +
                   b.trajectory[k].pose.theta) < 1e-9);
    CHECK(std::abs(a.trajectory[k].pose.x - b.trajectory[k].pose.x) < 1e-9);
  }
}
