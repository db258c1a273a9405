#pragma once

// Flat-file outputs: versioned CSV and standalone SVG figures. Numbers are
// printed with %.17g so that files round-trip and are byte-stable.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "speclim/convexgeom.hpp"
#include "speclim/error.hpp"
#include "speclim/region.hpp"

namespace speclim {

inline constexpr const char* kCsvHeader = "# speclim-csv v1";

inline std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_spectrum(const SpectrumCloud& cloud) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (std::size_t k = 0; k < cloud.dim(); ++k) os << "x_" << k + 1 << ',';
  os << "mult\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (double v : cloud.points()[i]) os << fmt_num(v) << ',';
    os << cloud.multiplicities()[i] << '\n';
  }
  return os.str();
}

inline std::string csv_support(const SupportSamples& s) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (std::size_t k = 0; k < s.dim; ++k) os << "alpha_" << k + 1 << ',';
  os << "phi\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    for (double v : s.directions[i]) os << fmt_num(v) << ',';
    os << fmt_num(s.values[i]) << '\n';
  }
  return os.str();
}

inline std::string csv_polygon(const ConvexPolygon& poly) {
  std::ostringstream os;
  os << kCsvHeader << "\nx,y\n";
  for (const auto& v : poly.vertices) os << fmt_num(v[0]) << ',' << fmt_num(v[1]) << '\n';
  return os.str();
}

/// Region boundary with explicit axis names, e.g. "H,F".
inline std::string csv_boundary(const std::vector<Point>& pts, const std::string& columns) {
  std::ostringstream os;
  os << kCsvHeader << '\n' << columns << '\n';
  for (const auto& p : pts) os << fmt_num(p[0]) << ',' << fmt_num(p[1]) << '\n';
  return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw Error("write to '" + path + "' failed");
}

/// Standalone SVG: region boundary as a closed polyline, hull polygon, and
/// spectrum points. The viewport is the region bounds plus a 10% margin.
inline std::string render_svg(const SpectrumCloud& points, const ConvexPolygon& hull, const ClassicalRegion& region,
                              const std::string& title = "") {
  if (points.dim() != 2 || region.dim != 2) throw DimensionError("emit_svg: planar data required");
  const auto boundary = region.boundary_samples(400);
  if (boundary.empty()) throw DomainError("emit_svg: region has no boundary samples");
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& p : boundary) {
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  }
  const double w0 = std::max(x1 - x0, 1e-9);
  const double h0 = std::max(y1 - y0, 1e-9);
  x0 -= 0.1 * w0;
  x1 += 0.1 * w0;
  y0 -= 0.1 * h0;
  y1 += 0.1 * h0;
  const double width = 600.0;
  const double height = std::clamp(width * (y1 - y0) / (x1 - x0), 150.0, 1200.0);
  auto px = [&](double x) { return fmt_num(std::round((x - x0) / (x1 - x0) * width * 100.0) / 100.0); };
  auto py = [&](double y) { return fmt_num(std::round((y1 - y) / (y1 - y0) * height * 100.0) / 100.0); };
  const double marker = std::max(1.0, std::min(3.0, 600.0 / (4.0 * std::sqrt(static_cast<double>(points.size()) + 1.0))));

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_num(width) << "\" height=\"" << fmt_num(height)
     << "\" viewBox=\"0 0 " << fmt_num(width) << ' ' << fmt_num(height) << "\">\n";
  if (!title.empty()) os << "  <title>" << title << "</title>\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <polygon fill=\"#dde8f4\" stroke=\"#2b5c8a\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < boundary.size(); ++i)
    os << (i ? " " : "") << px(boundary[i][0]) << ',' << py(boundary[i][1]);
  os << "\"/>\n";
  if (!hull.vertices.empty()) {
    os << "  <polygon fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < hull.vertices.size(); ++i)
      os << (i ? " " : "") << px(hull.vertices[i][0]) << ',' << py(hull.vertices[i][1]);
    os << "\"/>\n";
  }
  os << "  <g fill=\"#111111\">\n";
  for (const auto& p : points.points())
    os << "    <circle cx=\"" << px(p[0]) << "\" cy=\"" << py(p[1]) << "\" r=\"" << fmt_num(marker) << "\"/>\n";
  os << "  </g>\n</svg>\n";
  return os.str();
}

inline void emit_svg(const SpectrumCloud& points, const ConvexPolygon& hull, const ClassicalRegion& region,
                     const std::string& path) {
  write_file(path, render_svg(points, hull, region));
}

}  // namespace speclim
