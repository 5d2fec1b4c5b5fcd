#include "cylclasses/svg.hpp"

#include <algorithm>
#include <cstdio>

#include "cylclasses/version.hpp"

namespace cylclasses {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v + 0.0);  // normalize -0
  return buf;
}

}  // namespace

std::string polygon_svg(const Permutation& p, const SuspensionData& susp) {
  const PolygonChains chains = polygon(p, susp);

  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  for (const auto* chain : {&chains.top, &chains.bottom})
    for (const auto& pt : *chain) {
      min_x = std::min(min_x, pt[0]);
      max_x = std::max(max_x, pt[0]);
      min_y = std::min(min_y, pt[1]);
      max_y = std::max(max_y, pt[1]);
    }

  constexpr double kScale = 80.0;
  constexpr double kPad = 40.0;
  const double width = (max_x - min_x) * kScale + 2 * kPad;
  const double height = (max_y - min_y) * kScale + 2 * kPad;
  auto sx = [&](double x) { return (x - min_x) * kScale + kPad; };
  auto sy = [&](double y) { return (max_y - y) * kScale + kPad; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
         num(height) + "\">\n";
  out += "<desc>cylclasses " + std::string(kVersion) + " cylindrical construction: " +
         p.format() + "</desc>\n";

  auto polyline = [&](const std::vector<std::array<double, 2>>& pts,
                      const char* color) {
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out += ' ';
      out += num(sx(pts[i][0])) + "," + num(sy(pts[i][1]));
    }
    out += "\"/>\n";
  };
  polyline(chains.top, "#1f77b4");
  polyline(chains.bottom, "#d62728");

  auto seam = [&](const std::array<double, 2>& a, const std::array<double, 2>& b) {
    out += "<line stroke=\"#555555\" stroke-width=\"2\" stroke-dasharray=\"6,4\" x1=\"" +
           num(sx(a[0])) + "\" y1=\"" + num(sy(a[1])) + "\" x2=\"" + num(sx(b[0])) +
           "\" y2=\"" + num(sy(b[1])) + "\"/>\n";
  };
  seam(chains.bottom.front(), chains.top.front());
  seam(chains.bottom.back(), chains.top.back());

  auto labels = [&](const std::vector<std::array<double, 2>>& pts,
                    const std::vector<Letter>& row, double dy) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double mx = (pts[i][0] + pts[i + 1][0]) / 2;
      const double my = (pts[i][1] + pts[i + 1][1]) / 2;
      out += "<text font-family=\"monospace\" font-size=\"16\" text-anchor=\"middle\" x=\"" +
             num(sx(mx)) + "\" y=\"" + num(sy(my) + dy) + "\">" +
             p.alphabet().name(row[i]) + "</text>\n";
    }
  };
  labels(chains.top, p.top(), -8.0);
  labels(chains.bottom, p.bottom(), 20.0);

  out += "</svg>\n";
  return out;
}

}  // namespace cylclasses
