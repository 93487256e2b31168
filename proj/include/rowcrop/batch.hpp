#pragma once

#include <string>

#include "rowcrop/errors.hpp"
#include "rowcrop/metrics.hpp"
#include "rowcrop/scenario.hpp"

namespace rowcrop {

/// Runs every episode of the scenario (seed = base_seed + k), writing
/// episode_<k>.csv and episode_<k>.svg plus summary.json and
/// summary.txt into out_dir. Episodes may run in parallel; outputs
/// are a pure function of the scenario content. A Collision is a
/// valid episode outcome, not an error.
MetricsReport run_batch(const Scenario& scenario, const std::string& out_dir,
                        int jobs = 1);

/// Re-runs a single episode of the scenario and writes its CSV, SVG,
/// and a telemetry JSONL debug log.
EpisodeMetrics replay_episode(const Scenario& scenario, int episode_index,
                              const std::string& out_dir);

std::string summary_text(const Scenario& scenario,
                         const MetricsReport& report);
std::string summary_json(const Scenario& scenario,
                         const MetricsReport& report);

}  // namespace rowcrop
