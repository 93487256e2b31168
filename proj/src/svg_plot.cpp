#include "rowcrop/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace rowcrop {

void validate(const PlotSpec& spec) {
  if (!spec.draw_plants && !spec.draw_centerline && !spec.draw_trajectory) {
    throw std::invalid_argument("plot: at least one overlay must be enabled");
  }
  if (spec.canvas_width < 1 || spec.canvas_height < 1) {
    throw std::invalid_argument("plot: canvas dimensions must be >= 1");
  }
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Frame {
  double min_x, min_y, scale;
  double canvas_height, margin;

  double px(double x) const { return margin + (x - min_x) * scale; }
  double py(double y) const {
    return canvas_height - margin - (y - min_y) * scale;
  }
};

}  // namespace

std::string episode_svg(const World& world,
                        const std::vector<std::array<double, 2>>& trajectory,
                        const PlotSpec& spec) {
  validate(spec);

  double min_x = 0.0, max_x = world.row_length;
  double min_y = -world.row_spacing, max_y = world.row_spacing;
  for (const Plant& p : world.plants) {
    min_x = std::min(min_x, p.x - p.radius);
    max_x = std::max(max_x, p.x + p.radius);
    min_y = std::min(min_y, p.y - p.radius);
    max_y = std::max(max_y, p.y + p.radius);
  }
  for (const auto& pt : trajectory) {
    min_x = std::min(min_x, pt[0]);
    max_x = std::max(max_x, pt[0]);
    min_y = std::min(min_y, pt[1]);
    max_y = std::max(max_y, pt[1]);
  }

  const double usable_w = spec.canvas_width - 2.0 * spec.margin_px;
  const double usable_h = spec.canvas_height - 2.0 * spec.margin_px;
  const double span_x = std::max(max_x - min_x, 1e-9);
  const double span_y = std::max(max_y - min_y, 1e-9);
  const double scale = std::min(usable_w / span_x, usable_h / span_y);
  const Frame f{min_x, min_y, scale, static_cast<double>(spec.canvas_height),
                spec.margin_px};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << spec.canvas_width << "\" height=\"" << spec.canvas_height
      << "\" viewBox=\"0 0 " << spec.canvas_width << " "
      << spec.canvas_height << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (spec.draw_plants) {
    svg << "  <g id=\"plants\" fill=\"#4caf50\" fill-opacity=\"0.8\">\n";
    for (const Plant& p : world.plants) {
      svg << "    <circle cx=\"" << num(f.px(p.x)) << "\" cy=\""
          << num(f.py(p.y)) << "\" r=\"" << num(p.radius * scale)
          << "\"/>\n";
    }
    svg << "  </g>\n";
  }

  if (spec.draw_centerline) {
    svg << "  <g id=\"centerline\">\n";
    svg << "    <line x1=\"" << num(f.px(0.0)) << "\" y1=\"" << num(f.py(0.0))
        << "\" x2=\"" << num(f.px(world.row_length)) << "\" y2=\""
        << num(f.py(0.0))
        << "\" stroke=\"#1f4fd8\" stroke-width=\"1.5\" "
           "stroke-dasharray=\"6 4\"/>\n";
    svg << "  </g>\n";
  }

  if (spec.draw_trajectory && !trajectory.empty()) {
    svg << "  <g id=\"trajectory\">\n";
    svg << "    <polyline fill=\"none\" stroke=\"#d4a017\" "
           "stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
      if (i) svg << ' ';
      svg << num(f.px(trajectory[i][0])) << ',' << num(f.py(trajectory[i][1]));
    }
    svg << "\"/>\n";
    svg << "  </g>\n";
  }

  svg << "  <g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = 16.0;
  if (spec.draw_centerline) {
    svg << "    <text x=\"8\" y=\"" << num(ly)
        << "\" fill=\"#1f4fd8\">ideal centerline</text>\n";
    ly += 14.0;
  }
  if (spec.draw_trajectory) {
    svg << "    <text x=\"8\" y=\"" << num(ly)
        << "\" fill=\"#d4a017\">robot trajectory</text>\n";
    ly += 14.0;
  }
  if (spec.draw_plants) {
    svg << "    <text x=\"8\" y=\"" << num(ly)
        << "\" fill=\"#4caf50\">plants</text>\n";
  }
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rowcrop
