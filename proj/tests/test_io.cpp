#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "rowcrop/batch.hpp"
#include "rowcrop/pgm_io.hpp"
#include "rowcrop/svg_plot.hpp"
#include "rowcrop/trajectory_io.hpp"
#include "test_helpers.hpp"

using namespace rowcrop;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* tag) {
  const fs::path dir = fs::temp_directory_path() /
                       (std::string("rowcrop_test_") + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("scenario defaults round-trip through JSON") {
  const Scenario a = nominal_scenario();
  const Scenario b = parse_scenario(scenario_to_json(a), "roundtrip");
  CHECK(b.world.row_length == a.world.row_length);
  CHECK(b.pipeline.depth_threshold == a.pipeline.depth_threshold);
  CHECK(b.controller.v_x_max == a.controller.v_x_max);
  CHECK(b.base_seed == a.base_seed);
  CHECK(b.episodes == a.episodes);
}

TEST_CASE("scenario parsing diagnostics") {
  SUBCASE("unknown field is named") {
    try {
      parse_scenario(R"({"world": {"row_lenght": 8.0}})", "test");
      FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
      CHECK(std::string(e.what()).find("row_lenght") != std::string::npos);
    }
  }
  SUBCASE("wrong type is located") {
    try {
      parse_scenario(R"({"pipeline": {"history_len": "three"}})", "test");
      FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
      CHECK(std::string(e.what()).find("history_len") != std::string::npos);
    }
  }
  SUBCASE("invalid values are rejected") {
    CHECK_THROWS_AS(parse_scenario(R"({"episodes": 0})", "test"),
                    ScenarioError);
    CHECK_THROWS_AS(
        parse_scenario(R"({"world": {"row_length": -1.0}})", "test"),
        ScenarioError);
    CHECK_THROWS_AS(parse_scenario(R"({"schema": 2})", "test"),
                    ScenarioError);
    CHECK_THROWS_AS(parse_scenario("not json", "test"), ScenarioError);
  }
}

TEST_CASE("make_run derives the episode seed from base_seed") {
  Scenario s = nominal_scenario();
  s.base_seed = 100;
  CHECK(s.make_run(0).world.seed == 100);
  CHECK(s.make_run(7).world.seed == 107);
}

TEST_CASE("trajectory CSV round trip") {
  std::vector<TrajectorySample> trajectory;
  for (int k = 0; k < 20; ++k) {
    TrajectorySample s;
    s.t = k * 0.1;
    s.pose = {k * 0.05, std::sin(k * 0.3) * 0.01, k * 0.001};
    s.cmd = {0.5, -0.002 * k};
    s.decision = {k % 5 == 0 ? Steering::NoGap : Steering::Follow, 1.5};
    trajectory.push_back(s);
  }
  const auto dir = temp_dir("csv");
  const auto path = (dir / "traj.csv").string();
  write_trajectory_csv(trajectory, path);
  const auto back = read_trajectory_csv(path);
  REQUIRE(back.size() == trajectory.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back[k].t == doctest::Approx(trajectory[k].t));
    CHECK(back[k].pose.x == doctest::Approx(trajectory[k].pose.x));
    CHECK(back[k].pose.y == doctest::Approx(trajectory[k].pose.y));
    CHECK(back[k].decision.variant == trajectory[k].decision.variant);
  }
}

TEST_CASE("trajectory CSV parse errors name the line") {
  const auto dir = temp_dir("csv_bad");
  const auto path = (dir / "bad.csv").string();
  {
    std::ofstream out(path);
    out << "t,x,y,theta,v_x,omega_z,decision\n";
    out << "0,0,0,0,0.5,0,follow\n";
    out << "0.1,0,0,0,0.5\n";
  }
  try {
    read_trajectory_csv(path);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
}

TEST_CASE("PGM round trips") {
  std::mt19937_64 rng(3);
  const auto dir = temp_dir("pgm");

  const SegMask mask = testing::random_mask(rng, 33, 21);
  const auto mask_path = (dir / "mask.pgm").string();
  write_mask_pgm(mask, mask_path);
  CHECK(read_mask_pgm(mask_path).data == mask.data);

  DepthFrame depth = testing::random_depth(rng, 17, 9, 60.0);
  const auto depth_path = (dir / "depth.pgm").string();
  write_depth_pgm(depth, depth_path);
  const DepthFrame back = read_depth_pgm(depth_path);
  for (std::size_t p = 0; p < depth.data.size(); ++p) {
    if (depth.data[p] == DepthFrame::kNoReturn) {
      CHECK(back.data[p] == DepthFrame::kNoReturn);
    } else {
      CHECK(back.data[p] == doctest::Approx(depth.data[p]).epsilon(0.001));
    }
  }
}

TEST_CASE("telemetry line is valid JSON with cluster list") {
  StepTelemetry t;
  t.step = 4;
  t.clusters = {{10, 40}, {100, 140}};
  t.decision = {Steering::Follow, 8.5};
  t.cmd = {0.49, -0.002};
  const std::string line = telemetry_line(t);
  CHECK(line.find("\"follow\"") != std::string::npos);
  CHECK(line.find("\"start\":10") != std::string::npos);
  CHECK(line.find('\n') == std::string::npos);
}

TEST_CASE("episode SVG overlays and determinism") {
  const World world = generate_world(WorldSpec{});
  std::vector<std::array<double, 2>> traj;
  for (int k = 0; k <= 80; ++k) {
    traj.push_back({k * 0.1, 0.02 * std::sin(k * 0.2)});
  }

  const std::string a = episode_svg(world, traj, PlotSpec{});
  const std::string b = episode_svg(world, traj, PlotSpec{});
  CHECK(a == b);
  CHECK(a.find("id=\"plants\"") != std::string::npos);
  CHECK(a.find("id=\"centerline\"") != std::string::npos);
  CHECK(a.find("id=\"trajectory\"") != std::string::npos);

  PlotSpec only_traj;
  only_traj.draw_plants = false;
  only_traj.draw_centerline = false;
  const std::string c = episode_svg(world, traj, only_traj);
  CHECK(c.find("id=\"plants\"") == std::string::npos);
  CHECK(c.find("<polyline") != std::string::npos);

  PlotSpec none;
  none.draw_plants = none.draw_centerline = none.draw_trajectory = false;
  CHECK_THROWS_AS(episode_svg(world, traj, none), std::invalid_argument);
}

TEST_CASE("run_batch writes one artifact set per episode") {
  Scenario scenario = nominal_scenario();
  scenario.episodes = 2;
  scenario.max_steps = 40;  // truncated run, just exercising the plumbing
  const auto dir = temp_dir("batch");

  const MetricsReport report = run_batch(scenario, dir.string(), 2);
  CHECK(report.episodes.size() == 2);
  for (int k = 0; k < 2; ++k) {
    const auto stem = dir / ("episode_00" + std::to_string(k));
    CHECK(fs::exists(stem.string() + ".csv"));
    CHECK(fs::exists(stem.string() + ".svg"));
    const auto traj = read_trajectory_csv(stem.string() + ".csv");
    CHECK(traj.size() == 40);
  }
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "summary.txt"));
}

TEST_CASE("run_batch output is byte-identical across runs") {
  Scenario scenario = nominal_scenario();
  scenario.episodes = 2;
  scenario.max_steps = 60;
  scenario.world.dropout_rate = 0.05;
  scenario.world.mask_noise_rate = 0.01;

  const auto dir_a = temp_dir("det_a");
  const auto dir_b = temp_dir("det_b");
  run_batch(scenario, dir_a.string(), 2);
  run_batch(scenario, dir_b.string(), 1);

  for (const char* name :
       {"episode_000.csv", "episode_001.csv", "episode_000.svg",
        "episode_001.svg", "summary.json", "summary.txt"}) {
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
  }
}

TEST_CASE("replay writes a telemetry log") {
  Scenario scenario = nominal_scenario();
  scenario.episodes = 2;
  scenario.max_steps = 30;
  const auto dir = temp_dir("replay");
  replay_episode(scenario, 1, dir.string());
  CHECK(fs::exists(dir / "episode_001.jsonl"));
  const std::string log = slurp(dir / "episode_001.jsonl");
  CHECK(std::count(log.begin(), log.end(), '\n') == 30);
  CHECK_THROWS_AS(replay_episode(scenario, 5, dir.string()), ScenarioError);
}
