#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

namespace rowcrop {

/// Binary vegetation mask. Row-major, every element is 0 or 1.
struct SegMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  SegMask() = default;
  SegMask(int width, int height, std::uint8_t fill = 0);

  std::uint8_t& at(int row, int col) {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  std::uint8_t at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  bool same_size(const SegMask& other) const {
    return width == other.width && height == other.height;
  }
};

/// Per-pixel range image paired with a SegMask. Pixels with no valid
/// return carry kNoReturn (infinity), which compares beyond any
/// finite threshold.
struct DepthFrame {
  static constexpr float kNoReturn = std::numeric_limits<float>::infinity();

  int width = 0;
  int height = 0;
  std::vector<float> data;

  DepthFrame() = default;
  DepthFrame(int width, int height, float fill = kNoReturn);

  float& at(int row, int col) {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  float at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  bool same_size(const SegMask& mask) const {
    return width == mask.width && height == mask.height;
  }
};

/// Sliding window over the most recent masks. All buffered masks share
/// one size; pushing a mismatched mask throws.
class MaskHistory {
 public:
  explicit MaskHistory(int capacity);

  void push(const SegMask& mask);
  const std::deque<SegMask>& frames() const { return frames_; }
  int capacity() const { return capacity_; }
  void clear() { frames_.clear(); }

 private:
  int capacity_;
  std::deque<SegMask> frames_;
};

/// Per-column vegetation pixel counts.
struct ColumnHistogram {
  std::vector<int> bins;

  int width() const { return static_cast<int>(bins.size()); }
};

struct PipelineConfig {
  double noise_column_background_fraction = 0.97;
  int history_len = 3;
  double depth_threshold = 5.0;  // meters
  int min_cluster_width = 3;     // columns
  double end_of_row_fraction = 0.80;
};

void validate(const PipelineConfig& cfg);

/// Zeroes every column whose background fraction strictly exceeds the
/// given ratio. The input is not mutated.
SegMask column_noise_filter(const SegMask& mask, double background_fraction);

/// Appends the mask to the history (evicting the oldest frame when
/// full) and returns the elementwise OR of all buffered masks.
SegMask accumulate(MaskHistory& history, const SegMask& new_mask);

/// Keeps a vegetation pixel only when its depth is within the
/// threshold. No-return depth counts as beyond the threshold.
SegMask depth_cut(const SegMask& cum_mask, const DepthFrame& depth,
                  double depth_threshold);

/// Counts vegetation pixels per column.
ColumnHistogram column_histogram(const SegMask& mask);

/// Full per-frame chain: noise filter, accumulate, depth cut,
/// histogram. Mutates the history exactly once.
ColumnHistogram process_frame(MaskHistory& history, const SegMask& mask,
                              const DepthFrame& depth,
                              const PipelineConfig& cfg);

}  // namespace rowcrop
