#pragma once

#include <cstdint>
#include <string>

#include "rowcrop/errors.hpp"
#include "rowcrop/world_sim.hpp"

namespace rowcrop {

/// Batch description: the four module configs plus episode count,
/// seeding, and output location. Stored as JSON with a versioned
/// `schema` field; unknown keys are rejected.
struct Scenario {
  int schema = 1;
  WorldSpec world;
  CameraModel camera;
  PipelineConfig pipeline;
  ControllerConfig controller;
  RobotPose start_pose;
  double dt = 0.1;
  int max_steps = 1000;
  double collision_radius = 0.35;
  double end_of_row_margin = 1.25;
  int stall_limit = 20;
  int episodes = 3;
  std::uint64_t base_seed = 42;
  std::string out_dir = "out";

  /// SimRun for episode k; the world seed is base_seed + k so any
  /// episode can be replayed in isolation.
  SimRun make_run(int episode_index) const;
};

/// Nominal desk-scale scenario used by the acceptance runs: 8.4 m
/// rows, clean masks, three episodes.
Scenario nominal_scenario();

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin);
std::string scenario_to_json(const Scenario& scenario);

}  // namespace rowcrop
