#pragma once

#include <array>
#include <vector>

#include "rowcrop/world_sim.hpp"

namespace rowcrop {

/// Row-center reference polyline; points ordered by strictly
/// increasing x.
struct CenterlineRef {
  std::vector<std::array<double, 2>> points;
};

void validate(const CenterlineRef& ref);

/// Straight centerline of a two-row world: y = 0, x in [0, row_length].
CenterlineRef centerline_for(const World& world);

/// RMS of the perpendicular distance from each pose to the reference
/// polyline. Throws on an empty trajectory.
double centerline_rmse(const std::vector<RobotPose>& trajectory,
                       const CenterlineRef& ref);

/// Sum of Euclidean distances between consecutive samples.
double path_length(const std::vector<RobotPose>& trajectory);

std::vector<RobotPose> poses_of(const EpisodeResult& episode);

struct EpisodeMetrics {
  double path_length = 0.0;  // meters
  double rmse = 0.0;         // meters
  Termination termination = Termination::StepLimit;
};

struct MetricsReport {
  std::vector<EpisodeMetrics> episodes;
  double success_rate = 0.0;
  double rmse_mean = 0.0;
  double rmse_stddev = 0.0;  // sample (n-1); 0 for a single episode
};

/// Success rate is the fraction of episodes terminating
/// EndOfRowReached; the rmse spread is the sample standard deviation.
MetricsReport aggregate(const std::vector<EpisodeMetrics>& episodes);

}  // namespace rowcrop
