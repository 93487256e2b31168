#include "rowcrop/row_controller.hpp"

#include <stdexcept>

namespace rowcrop {

void validate(const ControllerConfig& cfg) {
  if (!(cfg.v_x_max > 0.0)) {
    throw std::invalid_argument("controller: v_x_max must be > 0");
  }
  if (!(cfg.omega_z_max > 0.0)) {
    throw std::invalid_argument("controller: omega_z_max must be > 0");
  }
  if (cfg.min_cluster_width < 1) {
    throw std::invalid_argument("controller: min_cluster_width must be >= 1");
  }
  if (!(cfg.end_of_row_fraction > 0.0 && cfg.end_of_row_fraction < 1.0)) {
    throw std::invalid_argument(
        "controller: end_of_row_fraction must be in (0, 1)");
  }
}

std::vector<GapCluster> find_zero_clusters(const ColumnHistogram& hist) {
  std::vector<GapCluster> clusters;
  const int w = hist.width();
  int j = 0;
  while (j < w) {
    if (hist.bins[j] == 0) {
      int start = j;
      while (j < w && hist.bins[j] == 0) ++j;
      clusters.push_back({start, j - 1});
    } else {
      ++j;
    }
  }
  return clusters;
}

SteeringDecision select_gap(const std::vector<GapCluster>& clusters, int width,
                            const ControllerConfig& cfg) {
  const GapCluster* best = nullptr;
  for (const GapCluster& c : clusters) {
    if (c.width() < cfg.min_cluster_width) continue;
    if (best == nullptr || c.width() > best->width()) {
      best = &c;  // ties keep the leftmost
    }
  }
  if (best == nullptr) {
    return {Steering::NoGap, 0.0};
  }
  if (best->width() > cfg.end_of_row_fraction * width) {
    return {Steering::EndOfRow, 0.0};
  }
  return {Steering::Follow, best->center() - width / 2.0};
}

VelocityCommand velocity_from_offset(const SteeringDecision& decision,
                                     int width, const ControllerConfig& cfg) {
  if (decision.variant != Steering::Follow) {
    return {0.0, 0.0};
  }
  const double half = width / 2.0;
  const double ratio = (decision.offset * decision.offset) / (half * half);
  const double sign = decision.offset >= 0.0 ? 1.0 : -1.0;
  return {cfg.v_x_max * (1.0 - ratio), -cfg.omega_z_max * sign * ratio};
}

std::pair<SteeringDecision, VelocityCommand> controller_step(
    const ColumnHistogram& hist, const ControllerConfig& cfg) {
  SteeringDecision decision =
      select_gap(find_zero_clusters(hist), hist.width(), cfg);
  VelocityCommand cmd = velocity_from_offset(decision, hist.width(), cfg);
  return {decision, cmd};
}

}  // namespace rowcrop
