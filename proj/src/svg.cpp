#include "veo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "veo/errors.hpp"

namespace veo {

namespace {

constexpr int k_margin_left = 64;
constexpr int k_margin_right = 16;
constexpr int k_margin_top = 28;
constexpr int k_margin_bottom = 40;

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct AxisRange {
  double lo = 0.0, hi = 1.0;
  bool log = false;

  double map(double v, double px_lo, double px_hi) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double x = log ? std::log10(v) : v;
    const double f = (b > a) ? (x - a) / (b - a) : 0.5;
    return px_lo + f * (px_hi - px_lo);
  }

  bool usable(double v) const {
    return std::isfinite(v) && (!log || v > 0.0);
  }
};

AxisRange fit_range(const SvgPanel& panel, bool is_x) {
  AxisRange range;
  range.log = is_x ? panel.log_x : panel.log_y;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : panel.series) {
    const auto& vals = is_x ? s.x : s.y;
    for (double v : vals) {
      if (!range.usable(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo <= hi)) {  // no usable points
    lo = range.log ? 1.0 : 0.0;
    hi = range.log ? 10.0 : 1.0;
  }
  if (lo == hi) {
    const double pad = range.log ? 0.0 : (lo == 0.0 ? 1.0 : std::abs(lo) * 0.1);
    if (range.log) {
      lo /= 2.0;
      hi *= 2.0;
    } else {
      lo -= pad;
      hi += pad;
    }
  } else if (!range.log) {
    const double pad = (hi - lo) * 0.05;
    lo -= pad;
    hi += pad;
  }
  range.lo = lo;
  range.hi = hi;
  return range;
}

std::vector<double> tick_values(const AxisRange& range, int n_ticks) {
  std::vector<double> ticks;
  if (range.log) {
    const int d_lo = static_cast<int>(std::ceil(std::log10(range.lo) - 1e-9));
    const int d_hi = static_cast<int>(std::floor(std::log10(range.hi) + 1e-9));
    for (int d = d_lo; d <= d_hi; ++d) ticks.push_back(std::pow(10.0, d));
    if (ticks.empty()) ticks = {range.lo, range.hi};
    return ticks;
  }
  for (int i = 0; i < n_ticks; ++i)
    ticks.push_back(range.lo +
                    (range.hi - range.lo) * i / double(n_ticks - 1));
  return ticks;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

}  // namespace

void write_svg(const std::string& path, const std::vector<SvgPanel>& panels,
               int width, int panel_height) {
  const int height = panel_height * std::max<int>(1, int(panels.size()));
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const SvgPanel& panel = panels[p];
    const double top = double(p) * panel_height + k_margin_top;
    const double bottom = double(p + 1) * panel_height - k_margin_bottom;
    const double left = k_margin_left;
    const double right = double(width) - k_margin_right;

    const AxisRange xr = fit_range(panel, true);
    const AxisRange yr = fit_range(panel, false);

    out << "<text x=\"" << coord((left + right) / 2) << "\" y=\""
        << coord(top - 10) << "\" text-anchor=\"middle\" font-family=\""
        << "sans-serif\" font-size=\"13\">" << escape(panel.title)
        << "</text>\n";
    out << "<rect x=\"" << coord(left) << "\" y=\"" << coord(top)
        << "\" width=\"" << coord(right - left) << "\" height=\""
        << coord(bottom - top) << "\" fill=\"none\" stroke=\"#333\""
        << " stroke-width=\"1\"/>\n";

    for (double t : tick_values(xr, 6)) {
      const double px = xr.map(t, left, right);
      out << "<line x1=\"" << coord(px) << "\" y1=\"" << coord(bottom)
          << "\" x2=\"" << coord(px) << "\" y2=\"" << coord(bottom + 4)
          << "\" stroke=\"#333\"/>\n";
      out << "<text x=\"" << coord(px) << "\" y=\"" << coord(bottom + 16)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
          << " font-size=\"10\">" << tick_label(t) << "</text>\n";
    }
    for (double t : tick_values(yr, 5)) {
      const double py = bottom - (yr.map(t, 0, bottom - top));
      out << "<line x1=\"" << coord(left - 4) << "\" y1=\"" << coord(py)
          << "\" x2=\"" << coord(left) << "\" y2=\"" << coord(py)
          << "\" stroke=\"#333\"/>\n";
      out << "<text x=\"" << coord(left - 6) << "\" y=\"" << coord(py + 3)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\""
          << " font-size=\"10\">" << tick_label(t) << "</text>\n";
    }

    out << "<text x=\"" << coord((left + right) / 2) << "\" y=\""
        << coord(bottom + 32) << "\" text-anchor=\"middle\" font-family=\""
        << "sans-serif\" font-size=\"11\">" << escape(panel.x_label)
        << "</text>\n";
    out << "<text x=\"14\" y=\"" << coord((top + bottom) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"11\" transform=\"rotate(-90 14 "
        << coord((top + bottom) / 2) << ")\">" << escape(panel.y_label)
        << "</text>\n";

    for (std::size_t s = 0; s < panel.series.size(); ++s) {
      const SvgSeries& series = panel.series[s];
      std::string points;
      auto flush = [&] {
        if (!points.empty()) {
          out << "<polyline fill=\"none\" stroke=\"" << series.color
              << "\" stroke-width=\"1.4\" points=\"" << points << "\"/>\n";
          points.clear();
        }
      };
      const std::size_t n = std::min(series.x.size(), series.y.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (!xr.usable(series.x[i]) || !yr.usable(series.y[i])) {
          flush();
          continue;
        }
        const double px = xr.map(series.x[i], left, right);
        const double py = bottom - yr.map(series.y[i], 0, bottom - top);
        if (!points.empty()) points += ' ';
        points += coord(px);
        points += ',';
        points += coord(py);
      }
      flush();
      if (!series.label.empty()) {
        const double ly = top + 14 + 14 * double(s);
        out << "<line x1=\"" << coord(right - 120) << "\" y1=\"" << coord(ly)
            << "\" x2=\"" << coord(right - 100) << "\" y2=\"" << coord(ly)
            << "\" stroke=\"" << series.color << "\" stroke-width=\"1.4\"/>\n";
        out << "<text x=\"" << coord(right - 96) << "\" y=\"" << coord(ly + 3)
            << "\" font-family=\"sans-serif\" font-size=\"10\">"
            << escape(series.label) << "</text>\n";
      }
    }
  }
  out << "</svg>\n";

  std::ofstream file(path, std::ios::binary);
  if (!file) throw config_error("cannot open '" + path + "' for writing");
  file << out.str();
}

}  // namespace veo
