/// @file svg.hpp
/// @brief Minimal deterministic SVG canvas for plots of polygons and circle patterns.
///
/// Shapes are collected first and serialized in insertion order with fixed
/// %.6f coordinate formatting, so identical inputs produce byte-identical
/// files. The viewBox is the bounding box of everything drawn, padded by 5%.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace pentalab {

class SvgCanvas {
 public:
  void begin_group(const std::string& stroke, double width = 0.8) {
    body_ += "  <g fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + fmt(width) + "\">\n";
  }
  void end_group() { body_ += "  </g>\n"; }

  void line(double x1, double y1, double x2, double y2, const std::string& dash = "") {
    touch(x1, y1);
    touch(x2, y2);
    body_ += "    <line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) +
             "\" y2=\"" + fmt(y2) + "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
    body_ += "/>\n";
  }

  void circle(double cx, double cy, double r) {
    touch(cx - r, cy - r);
    touch(cx + r, cy + r);
    body_ += "    <circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) + "\"/>\n";
  }

  void dot(double cx, double cy, double r, const std::string& fill) {
    touch(cx - r, cy - r);
    touch(cx + r, cy + r);
    body_ += "    <circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) +
             "\" fill=\"" + fill + "\" stroke=\"none\"/>\n";
  }

  /// Square point marker; rect rather than circle so that <circle> elements
  /// count exactly the circles of a drawing.
  void marker(double cx, double cy, double half, const std::string& fill) {
    touch(cx - half, cy - half);
    touch(cx + half, cy + half);
    body_ += "    <rect x=\"" + fmt(cx - half) + "\" y=\"" + fmt(cy - half) + "\" width=\"" +
             fmt(2 * half) + "\" height=\"" + fmt(2 * half) + "\" fill=\"" + fill +
             "\" stroke=\"none\"/>\n";
  }

  bool empty() const { return body_.empty(); }

  std::string str() const {
    double x0 = xmin_, y0 = ymin_, x1 = xmax_, y1 = ymax_;
    if (x1 <= x0) x1 = x0 + 1.0;
    if (y1 <= y0) y1 = y0 + 1.0;
    const double mx = 0.05 * (x1 - x0), my = 0.05 * (y1 - y0);
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(x0 - mx) + " " +
           fmt(y0 - my) + " " + fmt(x1 - x0 + 2 * mx) + " " + fmt(y1 - y0 + 2 * my) + "\">\n";
    out += body_;
    out += "</svg>\n";
    return out;
  }

 private:
  static std::string fmt(double v) {
    if (!(std::fabs(v) > 0.0)) v = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
  }

  void touch(double x, double y) {
    xmin_ = std::min(xmin_, x);
    xmax_ = std::max(xmax_, x);
    ymin_ = std::min(ymin_, y);
    ymax_ = std::max(ymax_, y);
  }

  std::string body_;
  double xmin_ = 1e300, xmax_ = -1e300, ymin_ = 1e300, ymax_ = -1e300;
};

}  // namespace pentalab
