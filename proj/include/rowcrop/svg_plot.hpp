#pragma once

#include <array>
#include <string>
#include <vector>

#include "rowcrop/world_sim.hpp"

namespace rowcrop {

/// Overlay selection for the episode plot. At least one overlay must
/// be enabled.
struct PlotSpec {
  bool draw_plants = true;
  bool draw_centerline = true;
  bool draw_trajectory = true;
  int canvas_width = 900;
  int canvas_height = 320;
  double margin_px = 30.0;
};

void validate(const PlotSpec& spec);

/// Static top-down episode plot: green plant markers, blue ideal
/// centerline, golden trajectory. Output is deterministic for
/// identical inputs.
std::string episode_svg(const World& world,
                        const std::vector<std::array<double, 2>>& trajectory,
                        const PlotSpec& spec);

}  // namespace rowcrop
