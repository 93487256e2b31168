// Batch experiment driver for the row-following simulator.
//
//   rowcrop run <scenario.json> [--out-dir DIR] [--jobs N]
//   rowcrop plot <trajectory.csv> --world <scenario.json> [--out FILE]
//   rowcrop replay <scenario.json> --episode K [--out-dir DIR]
//
// Exit codes: 0 success, 1 config error, 2 I/O error, 3 internal error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rowcrop/batch.hpp"
#include "rowcrop/svg_plot.hpp"
#include "rowcrop/trajectory_io.hpp"

namespace {

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            int jobs) {
  const rowcrop::Scenario scenario = rowcrop::load_scenario(scenario_path);
  const std::string dir = out_dir.empty() ? scenario.out_dir : out_dir;
  const rowcrop::MetricsReport report =
      rowcrop::run_batch(scenario, dir, jobs);
  std::cout << rowcrop::summary_text(scenario, report);
  std::cout << "outputs written to " << dir << "\n";
  return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& scenario_path,
             std::string out_path) {
  const rowcrop::Scenario scenario = rowcrop::load_scenario(scenario_path);
  const auto trajectory = rowcrop::read_trajectory_csv(csv_path);

  rowcrop::SimRun run = scenario.make_run(0);
  const rowcrop::World world = rowcrop::generate_world(run.world);
  std::vector<std::array<double, 2>> xy;
  xy.reserve(trajectory.size());
  for (const auto& s : trajectory) {
    xy.push_back({s.pose.x, s.pose.y});
  }

  if (out_path.empty()) {
    out_path =
        std::filesystem::path(csv_path).replace_extension(".svg").string();
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw rowcrop::IoError("cannot open for writing: " + out_path);
  }
  out << rowcrop::episode_svg(world, xy, rowcrop::PlotSpec{});
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_replay(const std::string& scenario_path, int episode,
               const std::string& out_dir) {
  const rowcrop::Scenario scenario = rowcrop::load_scenario(scenario_path);
  const std::string dir = out_dir.empty() ? scenario.out_dir : out_dir;
  const rowcrop::EpisodeMetrics m =
      rowcrop::replay_episode(scenario, episode, dir);
  std::printf("episode %d  path_length %.3f m  rmse %.4f m  %s\n", episode,
              m.path_length, m.rmse, rowcrop::to_string(m.termination));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crop-row following simulator and experiment runner"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string csv_path;
  std::string world_scenario;
  std::string out_dir;
  std::string out_file;
  int jobs = 1;
  int episode = 0;

  auto* run = app.add_subcommand("run", "Run a seeded episode batch");
  run->add_option("scenario", scenario_path, "Scenario JSON file")
      ->required();
  run->add_option("--out-dir", out_dir, "Output directory override");
  run->add_option("--jobs", jobs, "Parallel episode workers");

  auto* plot = app.add_subcommand("plot", "Render a trajectory CSV to SVG");
  plot->add_option("trajectory", csv_path, "Trajectory CSV file")->required();
  plot->add_option("--world", world_scenario, "Scenario JSON for the world")
      ->required();
  plot->add_option("--out", out_file, "Output SVG path");

  auto* replay =
      app.add_subcommand("replay", "Re-run one episode with telemetry");
  replay->add_option("scenario", scenario_path, "Scenario JSON file")
      ->required();
  replay->add_option("--episode", episode, "Episode index")->required();
  replay->add_option("--out-dir", out_dir, "Output directory override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario_path, out_dir, jobs);
    if (plot->parsed()) return cmd_plot(csv_path, world_scenario, out_file);
    if (replay->parsed()) return cmd_replay(scenario_path, episode, out_dir);
  } catch (const rowcrop::ScenarioError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const rowcrop::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
