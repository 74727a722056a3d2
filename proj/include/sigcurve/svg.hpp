#pragma once

// Minimal deterministic SVG scatter/polyline plots.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sigcurve/format.hpp"

namespace sigcurve::io {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> xy;
  std::string color = "#1f77b4";
  bool polyline = false;  ///< connect points instead of drawing dots
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

namespace detail {

inline std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v) { return format_double(v, 6); }

}  // namespace detail

/// Axes are scaled to the finite data with a 5% pad.
inline void write_svg(std::ostream& os, const Plot& plot) {
  constexpr double W = 640, H = 480, L = 70, R = 20, T = 40, B = 60;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : plot.series) {
    for (const auto& [x, y] : s.xy) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x), x1 = std::max(x1, x);
      y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  auto widen = [](double& lo, double& hi) {
    double span = hi - lo;
    if (span <= 1e-300) span = std::max(std::abs(lo), 1.0) * 1e-3;
    lo -= 0.05 * span;
    hi += 0.05 * span;
  };
  widen(x0, x1);
  widen(y0, y1);
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  using detail::num;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
     << detail::escape(plot.title) << "</text>\n"
     << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
     << H - T - B << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0;
    const double yv = y0 + (y1 - y0) * k / 4.0;
    os << "<text x=\"" << num(px(xv)) << "\" y=\"" << H - B + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">" << num(xv) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << num(py(yv) + 4)
       << "\" text-anchor=\"end\" font-size=\"11\">" << num(yv) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15
     << "\" text-anchor=\"middle\" font-size=\"13\">" << detail::escape(plot.x_label)
     << "</text>\n"
     << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
     << "transform=\"rotate(-90 18 " << (T + H - B) / 2 << ")\">"
     << detail::escape(plot.y_label) << "</text>\n";

  double legend_y = T + 16;
  for (const auto& s : plot.series) {
    if (s.polyline) {
      os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      bool first = true;
      for (const auto& [x, y] : s.xy) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        os << (first ? "" : " ") << num(px(x)) << ',' << num(py(y));
        first = false;
      }
      os << "\"/>\n";
    } else {
      for (const auto& [x, y] : s.xy) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        os << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"1.8\" fill=\""
           << s.color << "\"/>\n";
      }
    }
    if (!s.label.empty()) {
      os << "<text x=\"" << W - R - 8 << "\" y=\"" << legend_y
         << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << s.color << "\">"
         << detail::escape(s.label) << "</text>\n";
      legend_y += 16;
    }
  }
  os << "</svg>\n";
}

}  // namespace sigcurve::io
