#pragma once

#include <string>
#include <vector>

namespace veo {

// Minimal deterministic SVG line plots: fixed viewBox, one axes box per
// panel, tick labels, polyline per series. No external plotting dependency;
// output is stable byte-for-byte for identical input.
struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
  std::string color = "#1f77b4";
};

struct SvgPanel {
  std::string title, x_label, y_label;
  std::vector<SvgSeries> series;
  bool log_x = false, log_y = false;
};

// Panels are stacked vertically. Non-finite points (and non-positive values
// on log axes) split the polyline. Throws config_error if the file cannot be
// written.
void write_svg(const std::string& path, const std::vector<SvgPanel>& panels,
               int width = 720, int panel_height = 240);

}  // namespace veo
