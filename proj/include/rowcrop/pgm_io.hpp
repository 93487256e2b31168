#pragma once

#include <string>

#include "rowcrop/mask_pipeline.hpp"

namespace rowcrop {

// Debug dumps as portable graymaps (binary P5):
//   masks  -> maxval 255, vegetation 255, background 0
//   depth  -> maxval 65535, big-endian millimeters, 0 = no return,
//             ranges beyond 65.535 m clamp to 65535

void write_mask_pgm(const SegMask& mask, const std::string& path);
SegMask read_mask_pgm(const std::string& path);

void write_depth_pgm(const DepthFrame& depth, const std::string& path);
DepthFrame read_depth_pgm(const std::string& path);

}  // namespace rowcrop
