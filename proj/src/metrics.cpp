#include "rowcrop/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace rowcrop {

void validate(const CenterlineRef& ref) {
  if (ref.points.size() < 2) {
    throw std::invalid_argument("centerline: needs at least 2 points");
  }
  for (std::size_t i = 1; i < ref.points.size(); ++i) {
    if (!(ref.points[i][0] > ref.points[i - 1][0])) {
      throw std::invalid_argument("centerline: x must be strictly increasing");
    }
  }
}

CenterlineRef centerline_for(const World& world) {
  return {{{0.0, 0.0}, {world.row_length, 0.0}}};
}

namespace {

double point_segment_dist2(double px, double py, double ax, double ay,
                           double bx, double by) {
  const double abx = bx - ax;
  const double aby = by - ay;
  const double apx = px - ax;
  const double apy = py - ay;
  const double len2 = abx * abx + aby * aby;
  double s = len2 > 0.0 ? (apx * abx + apy * aby) / len2 : 0.0;
  if (s < 0.0) s = 0.0;
  if (s > 1.0) s = 1.0;
  const double dx = apx - s * abx;
  const double dy = apy - s * aby;
  return dx * dx + dy * dy;
}

}  // namespace

double centerline_rmse(const std::vector<RobotPose>& trajectory,
                       const CenterlineRef& ref) {
  validate(ref);
  if (trajectory.empty()) {
    throw std::invalid_argument("centerline_rmse: empty trajectory");
  }
  double sum = 0.0;
  for (const RobotPose& pose : trajectory) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < ref.points.size(); ++i) {
      const double d2 = point_segment_dist2(
          pose.x, pose.y, ref.points[i - 1][0], ref.points[i - 1][1],
          ref.points[i][0], ref.points[i][1]);
      if (d2 < best) best = d2;
    }
    sum += best;
  }
  return std::sqrt(sum / trajectory.size());
}

double path_length(const std::vector<RobotPose>& trajectory) {
  if (trajectory.empty()) {
    throw std::invalid_argument("path_length: empty trajectory");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    const double dx = trajectory[i].x - trajectory[i - 1].x;
    const double dy = trajectory[i].y - trajectory[i - 1].y;
    total += std::hypot(dx, dy);
  }
  return total;
}

std::vector<RobotPose> poses_of(const EpisodeResult& episode) {
  std::vector<RobotPose> poses;
  poses.reserve(episode.trajectory.size());
  for (const TrajectorySample& s : episode.trajectory) {
    poses.push_back(s.pose);
  }
  return poses;
}

MetricsReport aggregate(const std::vector<EpisodeMetrics>& episodes) {
  if (episodes.empty()) {
    throw std::invalid_argument("aggregate: needs at least one episode");
  }
  MetricsReport report;
  report.episodes = episodes;

  int successes = 0;
  double sum = 0.0;
  for (const EpisodeMetrics& e : episodes) {
    if (e.termination == Termination::EndOfRowReached) ++successes;
    sum += e.rmse;
  }
  const auto n = static_cast<double>(episodes.size());
  report.success_rate = successes / n;
  report.rmse_mean = sum / n;

  if (episodes.size() > 1) {
    double ss = 0.0;
    for (const EpisodeMetrics& e : episodes) {
      const double d = e.rmse - report.rmse_mean;
      ss += d * d;
    }
    report.rmse_stddev = std::sqrt(ss / (n - 1.0));
  }
  return report;
}

}  // namespace rowcrop
