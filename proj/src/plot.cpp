#include "recon/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "recon/farey.hpp"
#include "recon/io.hpp"

namespace recon {

namespace {

constexpr double kSize = 600;
constexpr double kRadius = 280;

// Cayley transform of the boundary: x ↦ (x − i)/(x + i); ∞ ↦ 1.
Point boundary_point(const Slope& s) {
  if (s.is_infinity()) return {1, 0};
  const double x = to_double(s.p()) / to_double(s.q());
  const Complex i(0, 1);
  return (x - i) / (x + i);
}

Point to_screen(Point z) { return {kSize / 2 + kRadius * z.real(), kSize / 2 - kRadius * z.imag()}; }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

std::string farey_svg(int max_height) {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kSize) + "\" height=\"" + num(kSize) +
                    "\" viewBox=\"0 0 " + num(kSize) + " " + num(kSize) + "\">\n";
  out += "<circle cx=\"" + num(kSize / 2) + "\" cy=\"" + num(kSize / 2) + "\" r=\"" + num(kRadius) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  const std::vector<Slope> slopes = enumerate_slopes(max_height);
  const std::set<Slope> domain(slopes.begin(), slopes.end());
  for (const Slope& a : slopes) {
    for (const Slope& b : neighbors_within(a, max_height)) {
      if (!(a < b)) continue;
      const Point pa = boundary_point(a), pb = boundary_point(b);
      const Point sa = to_screen(pa), sb = to_screen(pb);
      // Geodesic between boundary points at angular distance Δ has radius tan(Δ/2).
      const double delta = std::abs(std::arg(pb / pa));
      const double r = kRadius * std::tan(delta / 2);
      const bool ccw = std::arg(pb / pa) > 0;
      if (std::fabs(delta - std::acos(-1.0)) < 1e-9) {
        out += "<line x1=\"" + num(sa.real()) + "\" y1=\"" + num(sa.imag()) + "\" x2=\"" + num(sb.real()) +
               "\" y2=\"" + num(sb.imag()) + "\" stroke=\"steelblue\" stroke-width=\"0.6\"/>\n";
        continue;
      }
      out += "<path d=\"M " + num(sa.real()) + " " + num(sa.imag()) + " A " + num(r) + " " + num(r) + " 0 0 " +
             (ccw ? "1" : "0") + " " + num(sb.real()) + " " + num(sb.imag()) +
             "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"0.6\"/>\n";
    }
  }
  for (const Slope& s : slopes) {
    if (s.height() > 4) continue;
    const Point p = to_screen(boundary_point(s) * 1.06);
    out += "<text x=\"" + num(p.real()) + "\" y=\"" + num(p.imag()) +
           "\" font-size=\"11\" text-anchor=\"middle\" dominant-baseline=\"middle\">" + s.str() + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string polygon_svg(const PlanarPolygon& p) {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
  for (const Point& v : p.vertices) {
    lo_x = std::min(lo_x, v.real());
    hi_x = std::max(hi_x, v.real());
    lo_y = std::min(lo_y, v.imag());
    hi_y = std::max(hi_y, v.imag());
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double scale = (kSize - 80) / span;
  auto screen = [&](Point v) { return Point(40 + (v.real() - lo_x) * scale, kSize - 40 - (v.imag() - lo_y) * scale); };
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kSize) + "\" height=\"" + num(kSize) +
                    "\" viewBox=\"0 0 " + num(kSize) + " " + num(kSize) + "\">\n<polygon points=\"";
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    const Point s = screen(p.vertices[i]);
    out += (i ? " " : "") + num(s.real()) + "," + num(s.imag());
  }
  out += "\" fill=\"#dde8f4\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    const Point s = screen(p.vertices[i]);
    out += "<circle cx=\"" + num(s.real()) + "\" cy=\"" + num(s.imag()) + "\" r=\"3\"/>\n";
    out += "<text x=\"" + num(s.real() + 6) + "\" y=\"" + num(s.imag() - 6) + "\" font-size=\"13\">v" +
           std::to_string(i + 1) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace recon
