#include "rowcrop/world_sim.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace rowcrop {

void validate(const WorldSpec& spec) {
  if (!(spec.row_length > 0.0)) {
    throw std::invalid_argument("world: row_length must be > 0");
  }
  if (!(spec.row_spacing > 0.0)) {
    throw std::invalid_argument("world: row_spacing must be > 0");
  }
  if (!(spec.plant_spacing > 0.0)) {
    throw std::invalid_argument("world: plant_spacing must be > 0");
  }
  if (!(spec.plant_radius_mean > 0.0)) {
    throw std::invalid_argument("world: plant_radius_mean must be > 0");
  }
  if (spec.plant_radius_jitter < 0.0 ||
      spec.plant_radius_jitter >= spec.plant_radius_mean) {
    throw std::invalid_argument(
        "world: plant_radius_jitter must be in [0, plant_radius_mean)");
  }
  if (!(spec.plant_height > 0.0)) {
    throw std::invalid_argument("world: plant_height must be > 0");
  }
  if (!(spec.dropout_rate >= 0.0 && spec.dropout_rate < 1.0)) {
    throw std::invalid_argument("world: dropout_rate must be in [0, 1)");
  }
  if (!(spec.mask_noise_rate >= 0.0 && spec.mask_noise_rate < 1.0)) {
    throw std::invalid_argument("world: mask_noise_rate must be in [0, 1)");
  }
}

void validate(const CameraModel& cam) {
  if (!(cam.horizontal_fov > 0.0 && cam.horizontal_fov < M_PI)) {
    throw std::invalid_argument("camera: horizontal_fov must be in (0, pi)");
  }
  if (cam.width < 1 || cam.height < 1) {
    throw std::invalid_argument("camera: image dimensions must be >= 1");
  }
  if (!(cam.max_range > 0.0)) {
    throw std::invalid_argument("camera: max_range must be > 0");
  }
}

void validate(const SimRun& sim) {
  validate(sim.world);
  validate(sim.camera);
  validate(sim.pipeline);
  validate(sim.controller);
  if (!(sim.dt > 0.0)) {
    throw std::invalid_argument("sim: dt must be > 0");
  }
  if (sim.max_steps < 0) {
    throw std::invalid_argument("sim: max_steps must be >= 0");
  }
  if (!(sim.collision_radius > 0.0)) {
    throw std::invalid_argument("sim: collision_radius must be > 0");
  }
  if (sim.stall_limit < 1) {
    throw std::invalid_argument("sim: stall_limit must be >= 1");
  }
}

World generate_world(const WorldSpec& spec) {
  validate(spec);
  const int per_row =
      static_cast<int>(std::floor(spec.row_length / spec.plant_spacing)) + 1;
  if (per_row < 1) {
    throw std::invalid_argument("world: spec yields zero plants");
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> jitter(-spec.plant_radius_jitter,
                                                spec.plant_radius_jitter);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  World world;
  world.row_length = spec.row_length;
  world.row_spacing = spec.row_spacing;
  for (double side : {+1.0, -1.0}) {
    for (int k = 0; k < per_row; ++k) {
      const double radius =
          spec.plant_radius_jitter > 0.0
              ? spec.plant_radius_mean + jitter(rng)
              : spec.plant_radius_mean;
      const bool dropped =
          spec.dropout_rate > 0.0 && uni(rng) < spec.dropout_rate;
      if (dropped) continue;
      world.plants.push_back({k * spec.plant_spacing,
                              side * spec.row_spacing / 2.0, radius,
                              spec.plant_height});
    }
  }
  return world;
}

World mirror_world(const World& world) {
  World out = world;
  for (Plant& p : out.plants) {
    p.y = -p.y;
  }
  return out;
}

namespace {

// Nearest forward intersection of the ray with a plant disc, or
// infinity when there is none.
double ray_hit_range(const World& world, double ox, double oy, double dx,
                     double dy, double max_range, const Plant** hit) {
  double best = std::numeric_limits<double>::infinity();
  *hit = nullptr;
  for (const Plant& p : world.plants) {
    const double cx = p.x - ox;
    const double cy = p.y - oy;
    const double proj = cx * dx + cy * dy;
    if (proj <= 0.0) continue;
    const double d2 = cx * cx + cy * cy - proj * proj;
    const double r2 = p.radius * p.radius;
    if (d2 > r2) continue;
    const double t = proj - std::sqrt(r2 - d2);
    if (t > 0.0 && t < best && t <= max_range) {
      best = t;
      *hit = &p;
    }
  }
  return best;
}

}  // namespace

std::pair<SegMask, DepthFrame> render(const World& world,
                                      const RobotPose& pose,
                                      const CameraModel& cam,
                                      std::uint64_t noise_seed,
                                      double noise_rate) {
  SegMask mask(cam.width, cam.height, 0);
  DepthFrame depth(cam.width, cam.height, DepthFrame::kNoReturn);

  const double focal = (cam.width / 2.0) / std::tan(cam.horizontal_fov / 2.0);
  for (int j = 0; j < cam.width; ++j) {
    // Continuous column center; positive u looks right of heading.
    const double u = (j + 0.5) - cam.width / 2.0;
    const double bearing = std::atan(u / focal);
    const double a = pose.theta - bearing;
    const Plant* hit = nullptr;
    const double range = ray_hit_range(world, pose.x, pose.y, std::cos(a),
                                       std::sin(a), cam.max_range, &hit);
    if (hit == nullptr) continue;

    const double apparent = focal * hit->height / range;
    int fill = static_cast<int>(std::lround(apparent));
    if (fill < 1) fill = 1;
    if (fill > cam.height) fill = cam.height;
    for (int i = cam.height - fill; i < cam.height; ++i) {
      mask.at(i, j) = 1;
      depth.at(i, j) = static_cast<float>(range);
    }
  }

  if (noise_rate > 0.0) {
    std::mt19937_64 rng(noise_seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (std::uint8_t& px : mask.data) {
      if (uni(rng) < noise_rate) px ^= 1;
    }
  }
  return {std::move(mask), std::move(depth)};
}

double normalize_angle(double a) {
  a = std::remainder(a, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

RobotPose kinematics_step(const RobotPose& pose, const VelocityCommand& cmd,
                          double dt) {
  RobotPose next;
  next.x = pose.x + cmd.linear * std::cos(pose.theta) * dt;
  next.y = pose.y + cmd.linear * std::sin(pose.theta) * dt;
  next.theta = normalize_angle(pose.theta + cmd.angular * dt);
  return next;
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::EndOfRowReached:
      return "end_of_row_reached";
    case Termination::Collision:
      return "collision";
    case Termination::StepLimit:
      return "step_limit";
    case Termination::NoGapStall:
      return "no_gap_stall";
  }
  return "unknown";
}

bool in_collision(const World& world, const RobotPose& pose,
                  double collision_radius) {
  for (const Plant& p : world.plants) {
    const double dx = p.x - pose.x;
    const double dy = p.y - pose.y;
    const double reach = p.radius + collision_radius;
    if (dx * dx + dy * dy < reach * reach) return true;
  }
  return false;
}

namespace {

std::uint64_t frame_noise_seed(std::uint64_t base, int step) {
  return base ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(step + 1));
}

}  // namespace

EpisodeResult run_episode(const SimRun& sim, const World& world,
                          const StepObserver& observer) {
  validate(sim);

  EpisodeResult result;
  MaskHistory history(sim.pipeline.history_len);
  RobotPose pose = sim.start_pose;
  int no_gap_run = 0;

  for (int step = 0; step < sim.max_steps; ++step) {
    if (in_collision(world, pose, sim.collision_radius)) {
      result.termination = Termination::Collision;
      return result;
    }

    auto [mask, depth] =
        render(world, pose, sim.camera,
               frame_noise_seed(sim.world.seed, step),
               sim.world.mask_noise_rate);
    ColumnHistogram hist = process_frame(history, mask, depth, sim.pipeline);
    auto [decision, cmd] = controller_step(hist, sim.controller);

    result.trajectory.push_back({step * sim.dt, pose, cmd, decision});
    if (observer) {
      observer({step, pose, find_zero_clusters(hist), decision, cmd});
    }

    if (decision.variant == Steering::EndOfRow &&
        pose.x > world.row_length - sim.end_of_row_margin) {
      result.termination = Termination::EndOfRowReached;
      return result;
    }
    if (decision.variant == Steering::NoGap) {
      if (++no_gap_run >= sim.stall_limit) {
        result.termination = Termination::NoGapStall;
        return result;
      }
    } else {
      no_gap_run = 0;
    }

    pose = kinematics_step(pose, cmd, sim.dt);
  }
  result.termination = Termination::StepLimit;
  return result;
}

EpisodeResult run_episode(const SimRun& sim, const StepObserver& observer) {
  return run_episode(sim, generate_world(sim.world), observer);
}

}  // namespace rowcrop
