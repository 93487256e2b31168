#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rowcrop/mask_pipeline.hpp"
#include "rowcrop/row_controller.hpp"

namespace rowcrop {

/// Parametric two-row crop world. Plants are vertical discs of the
/// given radius and height placed along the x axis at y = +/-
/// row_spacing/2.
struct WorldSpec {
  double row_length = 8.4;          // meters
  double row_spacing = 1.5;         // center-to-center of the two rows
  double plant_spacing = 0.3;       // along-row
  double plant_radius_mean = 0.16;  // meters
  double plant_radius_jitter = 0.02;
  double plant_height = 0.3;  // meters
  std::uint64_t seed = 1;
  double dropout_rate = 0.0;     // probability a plant is missing
  double mask_noise_rate = 0.0;  // probability a mask pixel is flipped
};

void validate(const WorldSpec& spec);

struct Plant {
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;
  double height = 0.0;
};

struct World {
  std::vector<Plant> plants;
  double row_length = 0.0;
  double row_spacing = 0.0;
};

struct RobotPose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // radians, normalized to (-pi, pi]
};

/// Forward-mounted pinhole depth camera, horizontal ray fan.
struct CameraModel {
  double horizontal_fov = 1.5;  // radians
  int width = 224;
  int height = 224;
  double mount_height = 0.4;  // meters
  double max_range = 8.0;     // meters
};

void validate(const CameraModel& cam);

World generate_world(const WorldSpec& spec);

/// Reflects the world about the row axis (y -> -y).
World mirror_world(const World& world);

/// Oracle segmenter: one ray per image column in the camera's
/// horizontal plane. A column hitting a plant within max_range is
/// filled bottom-up in proportion to the plant's apparent height and
/// carries the hit range as depth; all other pixels are background
/// with no-return depth. With noise_rate > 0 each mask pixel is then
/// flipped independently using the seeded stream.
std::pair<SegMask, DepthFrame> render(const World& world,
                                      const RobotPose& pose,
                                      const CameraModel& cam,
                                      std::uint64_t noise_seed,
                                      double noise_rate);

double normalize_angle(double a);

/// Explicit-Euler unicycle update.
RobotPose kinematics_step(const RobotPose& pose, const VelocityCommand& cmd,
                          double dt);

enum class Termination { EndOfRowReached, Collision, StepLimit, NoGapStall };

const char* to_string(Termination t);

struct TrajectorySample {
  double t = 0.0;
  RobotPose pose;
  VelocityCommand cmd;
  SteeringDecision decision;
};

struct SimRun {
  WorldSpec world;
  CameraModel camera;
  PipelineConfig pipeline;
  ControllerConfig controller;
  RobotPose start_pose;
  double dt = 0.1;
  int max_steps = 1000;
  double collision_radius = 0.35;  // meters, robot footprint circle
  double end_of_row_margin = 1.0;  // meters before the row end
  int stall_limit = 20;            // consecutive NoGap steps
};

void validate(const SimRun& sim);

struct EpisodeResult {
  std::vector<TrajectorySample> trajectory;
  Termination termination = Termination::StepLimit;
};

/// Per-step observer payload for telemetry logging.
struct StepTelemetry {
  int step = 0;
  RobotPose pose;
  std::vector<GapCluster> clusters;
  SteeringDecision decision;
  VelocityCommand cmd;
};

using StepObserver = std::function<void(const StepTelemetry&)>;

bool in_collision(const World& world, const RobotPose& pose,
                  double collision_radius);

/// Closed loop: render -> process_frame -> controller -> kinematics
/// until end of row, collision, persistent NoGap, or the step limit.
/// Deterministic for fixed seeds.
EpisodeResult run_episode(const SimRun& sim, const World& world,
                          const StepObserver& observer = {});
EpisodeResult run_episode(const SimRun& sim,
                          const StepObserver& observer = {});

}  // namespace rowcrop
