#include "rowcrop/batch.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "rowcrop/svg_plot.hpp"
#include "rowcrop/trajectory_io.hpp"

namespace rowcrop {

namespace fs = std::filesystem;

namespace {

std::string episode_stem(int k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "episode_%03d", k);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  out << content;
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

std::vector<std::array<double, 2>> xy_of(const EpisodeResult& episode) {
  std::vector<std::array<double, 2>> xy;
  xy.reserve(episode.trajectory.size());
  for (const TrajectorySample& s : episode.trajectory) {
    xy.push_back({s.pose.x, s.pose.y});
  }
  return xy;
}

EpisodeMetrics run_and_write(const Scenario& scenario, int k,
                             const std::string& out_dir,
                             const StepObserver& observer = {}) {
  const SimRun run = scenario.make_run(k);
  const World world = generate_world(run.world);
  const EpisodeResult episode = run_episode(run, world, observer);

  const std::string stem = (fs::path(out_dir) / episode_stem(k)).string();
  write_trajectory_csv(episode.trajectory, stem + ".csv");
  write_file(stem + ".svg", episode_svg(world, xy_of(episode), PlotSpec{}));

  EpisodeMetrics m;
  m.termination = episode.termination;
  if (!episode.trajectory.empty()) {
    const auto poses = poses_of(episode);
    m.path_length = path_length(poses);
    m.rmse = centerline_rmse(poses, centerline_for(world));
  }
  return m;
}

}  // namespace

MetricsReport run_batch(const Scenario& scenario, const std::string& out_dir,
                        int jobs) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + out_dir + ": " +
                  ec.message());
  }

  std::vector<EpisodeMetrics> metrics(scenario.episodes);
  if (jobs < 1) jobs = 1;
  jobs = std::min(jobs, scenario.episodes);

  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (int k = next.fetch_add(1); k < scenario.episodes;
             k = next.fetch_add(1)) {
          metrics[k] = run_and_write(scenario, k, out_dir);
        }
      } catch (...) {
        errors[w] = std::current_exception();
        next.store(scenario.episodes);
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const MetricsReport report = aggregate(metrics);
  write_file((fs::path(out_dir) / "summary.json").string(),
             summary_json(scenario, report));
  write_file((fs::path(out_dir) / "summary.txt").string(),
             summary_text(scenario, report));
  return report;
}

EpisodeMetrics replay_episode(const Scenario& scenario, int episode_index,
                              const std::string& out_dir) {
  if (episode_index < 0 || episode_index >= scenario.episodes) {
    throw ScenarioError("episode index " + std::to_string(episode_index) +
                        " out of range [0, " +
                        std::to_string(scenario.episodes) + ")");
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + out_dir + ": " +
                  ec.message());
  }

  std::ostringstream log;
  auto observer = [&log](const StepTelemetry& t) {
    log << telemetry_line(t) << '\n';
  };
  EpisodeMetrics m = run_and_write(scenario, episode_index, out_dir, observer);
  write_file((fs::path(out_dir) / (episode_stem(episode_index) + ".jsonl"))
                 .string(),
             log.str());
  return m;
}

std::string summary_text(const Scenario& scenario,
                         const MetricsReport& report) {
  std::ostringstream out;
  char buf[160];
  out << "episodes: " << scenario.episodes
      << "  base_seed: " << scenario.base_seed << "\n";
  for (std::size_t k = 0; k < report.episodes.size(); ++k) {
    const EpisodeMetrics& e = report.episodes[k];
    std::snprintf(buf, sizeof(buf),
                  "episode %3zu  path_length %.3f m  rmse %.4f m  %s\n", k,
                  e.path_length, e.rmse, to_string(e.termination));
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "success_rate %.3f  rmse %.4f +/- %.4f m\n",
                report.success_rate, report.rmse_mean, report.rmse_stddev);
  out << buf;
  return out.str();
}

std::string summary_json(const Scenario& scenario,
                         const MetricsReport& report) {
  nlohmann::json j;
  j["scenario"] = nlohmann::json::parse(scenario_to_json(scenario));
  auto episodes = nlohmann::json::array();
  for (std::size_t k = 0; k < report.episodes.size(); ++k) {
    const EpisodeMetrics& e = report.episodes[k];
    episodes.push_back({{"episode", k},
                        {"seed", scenario.base_seed + k},
                        {"path_length_m", e.path_length},
                        {"rmse_m", e.rmse},
                        {"termination", to_string(e.termination)}});
  }
  j["episodes"] = std::move(episodes);
  j["aggregate"] = {{"success_rate", report.success_rate},
                    {"rmse_mean_m", report.rmse_mean},
                    {"rmse_stddev_m", report.rmse_stddev}};
  return j.dump(2) + "\n";
}

}  // namespace rowcrop
