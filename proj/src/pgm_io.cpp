#include "rowcrop/pgm_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

#include "rowcrop/errors.hpp"

namespace rowcrop {

namespace {

struct PgmHeader {
  int width = 0;
  int height = 0;
  int maxval = 0;
};

PgmHeader read_header(std::istream& in, const std::string& path) {
  std::string magic;
  in >> magic;
  if (magic != "P5") {
    throw IoError(path + ": not a binary PGM (P5) file");
  }
  PgmHeader h;
  in >> h.width >> h.height >> h.maxval;
  if (!in || h.width < 1 || h.height < 1) {
    throw IoError(path + ": malformed PGM header");
  }
  in.get();  // single whitespace before pixel data
  return h;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open for reading: " + path);
  }
  return in;
}

}  // namespace

void write_mask_pgm(const SegMask& mask, const std::string& path) {
  auto out = open_out(path);
  out << "P5\n" << mask.width << " " << mask.height << "\n255\n";
  for (std::uint8_t v : mask.data) {
    out.put(v ? static_cast<char>(0xFF) : 0);
  }
}

SegMask read_mask_pgm(const std::string& path) {
  auto in = open_in(path);
  const PgmHeader h = read_header(in, path);
  if (h.maxval != 255) {
    throw IoError(path + ": mask PGM must have maxval 255");
  }
  SegMask mask(h.width, h.height);
  for (std::uint8_t& v : mask.data) {
    const int c = in.get();
    if (c < 0) throw IoError(path + ": truncated pixel data");
    v = c >= 128 ? 1 : 0;
  }
  return mask;
}

void write_depth_pgm(const DepthFrame& depth, const std::string& path) {
  auto out = open_out(path);
  out << "P5\n" << depth.width << " " << depth.height << "\n65535\n";
  for (float v : depth.data) {
    std::uint16_t mm = 0;
    if (std::isfinite(v)) {
      const double scaled = std::lround(static_cast<double>(v) * 1000.0);
      mm = scaled > 65535.0 ? 65535 : static_cast<std::uint16_t>(scaled);
    }
    out.put(static_cast<char>(mm >> 8));
    out.put(static_cast<char>(mm & 0xFF));
  }
}

DepthFrame read_depth_pgm(const std::string& path) {
  auto in = open_in(path);
  const PgmHeader h = read_header(in, path);
  if (h.maxval != 65535) {
    throw IoError(path + ": depth PGM must have maxval 65535");
  }
  DepthFrame depth(h.width, h.height);
  for (float& v : depth.data) {
    const int hi = in.get();
    const int lo = in.get();
    if (hi < 0 || lo < 0) {
      throw IoError(path + ": truncated pixel data");
    }
    const std::uint16_t mm = static_cast<std::uint16_t>((hi << 8) | lo);
    v = mm == 0 ? DepthFrame::kNoReturn : static_cast<float>(mm) / 1000.0f;
  }
  return depth;
}

}  // namespace rowcrop
