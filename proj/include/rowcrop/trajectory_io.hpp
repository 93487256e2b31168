#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rowcrop/world_sim.hpp"

namespace rowcrop {

// Trajectory CSV: header `t,x,y,theta,v_x,omega_z,decision`, numbers
// printed with 6 significant digits, decision one of
// follow / end_of_row / no_gap.

const char* to_string(Steering s);
Steering steering_from_string(const std::string& s);

std::string trajectory_to_csv(const std::vector<TrajectorySample>& trajectory);
void write_trajectory_csv(const std::vector<TrajectorySample>& trajectory,
                          const std::string& path);

/// Parses a trajectory CSV; errors name the offending line.
std::vector<TrajectorySample> read_trajectory_csv(const std::string& path);

/// One JSON line per control step (decision, offset, clusters,
/// commanded velocities) for the CLI debug log.
std::string telemetry_line(const StepTelemetry& telemetry);

}  // namespace rowcrop
