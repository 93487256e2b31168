#include "rowcrop/mask_pipeline.hpp"

#include <stdexcept>

namespace rowcrop {

SegMask::SegMask(int width, int height, std::uint8_t fill)
    : width(width),
      height(height),
      data(static_cast<std::size_t>(width) * height, fill) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("SegMask dimensions must be >= 1");
  }
}

DepthFrame::DepthFrame(int width, int height, float fill)
    : width(width),
      height(height),
      data(static_cast<std::size_t>(width) * height, fill) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("DepthFrame dimensions must be >= 1");
  }
}

MaskHistory::MaskHistory(int capacity) : capacity_(capacity) {
  if (capacity < 1) {
    throw std::invalid_argument("MaskHistory capacity must be >= 1");
  }
}

void MaskHistory::push(const SegMask& mask) {
  if (!frames_.empty() && !frames_.front().same_size(mask)) {
    throw std::invalid_argument(
        "MaskHistory: mask dimensions do not match buffered frames");
  }
  if (static_cast<int>(frames_.size()) == capacity_) {
    frames_.pop_front();
  }
  frames_.push_back(mask);
}

void validate(const PipelineConfig& cfg) {
  if (!(cfg.noise_column_background_fraction > 0.0 &&
        cfg.noise_column_background_fraction <= 1.0)) {
    throw std::invalid_argument(
        "pipeline: noise_column_background_fraction must be in (0, 1]");
  }
  if (cfg.history_len < 1) {
    throw std::invalid_argument("pipeline: history_len must be >= 1");
  }
  if (!(cfg.depth_threshold > 0.0)) {
    throw std::invalid_argument("pipeline: depth_threshold must be > 0");
  }
  if (cfg.min_cluster_width < 1) {
    throw std::invalid_argument("pipeline: min_cluster_width must be >= 1");
  }
  if (!(cfg.end_of_row_fraction > 0.0 && cfg.end_of_row_fraction < 1.0)) {
    throw std::invalid_argument(
        "pipeline: end_of_row_fraction must be in (0, 1)");
  }
}

SegMask column_noise_filter(const SegMask& mask, double background_fraction) {
  SegMask out = mask;
  for (int j = 0; j < mask.width; ++j) {
    int zeros = 0;
    for (int i = 0; i < mask.height; ++i) {
      if (mask.at(i, j) == 0) ++zeros;
    }
    if (static_cast<double>(zeros) / mask.height > background_fraction) {
      for (int i = 0; i < mask.height; ++i) {
        out.at(i, j) = 0;
      }
    }
  }
  return out;
}

SegMask accumulate(MaskHistory& history, const SegMask& new_mask) {
  history.push(new_mask);
  const auto& frames = history.frames();
  SegMask out = frames.front();
  for (std::size_t k = 1; k < frames.size(); ++k) {
    const SegMask& m = frames[k];
    for (std::size_t p = 0; p < out.data.size(); ++p) {
      out.data[p] |= m.data[p];
    }
  }
  return out;
}

SegMask depth_cut(const SegMask& cum_mask, const DepthFrame& depth,
                  double depth_threshold) {
  if (!depth.same_size(cum_mask)) {
    throw std::invalid_argument("depth_cut: mask/depth dimension mismatch");
  }
  SegMask out = cum_mask;
  for (std::size_t p = 0; p < out.data.size(); ++p) {
    if (out.data[p] != 0 && !(depth.data[p] <= depth_threshold)) {
      out.data[p] = 0;
    }
  }
  return out;
}

ColumnHistogram column_histogram(const SegMask& mask) {
  ColumnHistogram hist;
  hist.bins.assign(mask.width, 0);
  for (int i = 0; i < mask.height; ++i) {
    for (int j = 0; j < mask.width; ++j) {
      hist.bins[j] += mask.at(i, j);
    }
  }
  return hist;
}

ColumnHistogram process_frame(MaskHistory& history, const SegMask& mask,
                              const DepthFrame& depth,
                              const PipelineConfig& cfg) {
  SegMask filtered =
      column_noise_filter(mask, cfg.noise_column_background_fraction);
  SegMask cumulative = accumulate(history, filtered);
  SegMask cut = depth_cut(cumulative, depth, cfg.depth_threshold);
  return column_histogram(cut);
}

}  // namespace rowcrop
