#pragma once

#include <utility>
#include <vector>

#include "rowcrop/mask_pipeline.hpp"

namespace rowcrop {

/// Maximal run of zero histogram bins, inclusive column indices.
struct GapCluster {
  int start = 0;
  int end = 0;

  int width() const { return end - start + 1; }
  /// Midpoint in continuous column coordinates (column j spans
  /// [j, j+1)), so a gap symmetric about the frame center maps to
  /// exactly w/2.
  double center() const { return (start + end + 1) / 2.0; }
};

enum class Steering { Follow, EndOfRow, NoGap };

/// Outcome of gap selection. offset is the signed pixel distance from
/// the frame center (w/2) to the chosen cluster center, positive when
/// the cluster lies right of center; only meaningful for Follow.
struct SteeringDecision {
  Steering variant = Steering::NoGap;
  double offset = 0.0;
};

struct VelocityCommand {
  double linear = 0.0;   // v_x, m/s
  double angular = 0.0;  // omega_z, rad/s
};

struct ControllerConfig {
  double v_x_max = 0.5;      // m/s
  double omega_z_max = 0.5;  // rad/s
  int min_cluster_width = 3;
  double end_of_row_fraction = 0.80;
};

void validate(const ControllerConfig& cfg);

/// All maximal zero runs, left to right.
std::vector<GapCluster> find_zero_clusters(const ColumnHistogram& hist);

/// Discards clusters narrower than min_cluster_width, picks the widest
/// survivor (leftmost on ties). A survivor wider than
/// end_of_row_fraction * w signals end of row; no survivor at all is
/// NoGap.
SteeringDecision select_gap(const std::vector<GapCluster>& clusters, int width,
                            const ControllerConfig& cfg);

/// Parabolic velocity laws. Follow(d) gives
///   v_x     = v_x_max * (1 - d^2 / (w/2)^2)
///   omega_z = -omega_z_max * sign(d) * d^2 / (w/2)^2
/// with sign(0) = +1. EndOfRow and NoGap command a full stop.
VelocityCommand velocity_from_offset(const SteeringDecision& decision,
                                     int width, const ControllerConfig& cfg);

/// Histogram in, decision and command out.
std::pair<SteeringDecision, VelocityCommand> controller_step(
    const ColumnHistogram& hist, const ControllerConfig& cfg);

}  // namespace rowcrop
