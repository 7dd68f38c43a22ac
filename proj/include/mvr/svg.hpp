#ifndef MVR_SVG_HPP
#define MVR_SVG_HPP

// SVG 1.1 drawing of a triangulation of a subset of the unit square.

#include <sstream>
#include <string>
#include <vector>

#include "mvr/error.hpp"
#include "mvr/exact.hpp"
#include "mvr/triangulation.hpp"

namespace mvr {

struct SvgOptions {
  double size = 480;    // side of the unit square in pixels
  double margin = 40;
  bool labels = true;   // homogeneous coordinates next to each vertex
  std::vector<Triangulation> highlights;  // drawn filled, under the edges
};

inline std::string render_svg(const Triangulation& t, const SvgOptions& opt = {}) {
  if (t.ambient_dim() != 2) throw DimensionMismatch("only triangulations in the plane can be drawn");
  for (const auto& h : opt.highlights)
    if (h.ambient_dim() != 2) throw DimensionMismatch("highlights must live in the plane");
  auto px = [&](const Point& p) {
    return std::pair{opt.margin + p[0].convert_to<double>() * opt.size,
                     opt.margin + (1 - p[1].convert_to<double>()) * opt.size};
  };
  static const char* fills[] = {"#f4a261", "#2a9d8f", "#e9c46a", "#8ab17d", "#e76f51", "#9d4edd"};
  std::ostringstream os;
  double w = opt.size + 2 * opt.margin;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << w
     << "\" viewBox=\"0 0 " << w << ' ' << w << "\">\n"
     << "<rect x=\"" << opt.margin << "\" y=\"" << opt.margin << "\" width=\"" << opt.size << "\" height=\""
     << opt.size << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";
  auto polygon = [&](const std::vector<Point>& pts, const std::string& style) {
    os << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto [x, y] = px(pts[i]);
      os << (i ? " " : "") << x << ',' << y;
    }
    os << "\" " << style << "/>\n";
  };
  auto segment = [&](const Point& a, const Point& b, const std::string& style) {
    auto [x1, y1] = px(a);
    auto [x2, y2] = px(b);
    os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2 << "\" " << style << "/>\n";
  };
  for (std::size_t h = 0; h < opt.highlights.size(); ++h) {
    std::string fill = fills[h % (sizeof fills / sizeof *fills)];
    os << "<g class=\"highlight\" fill=\"" << fill << "\" stroke=\"" << fill << "\" fill-opacity=\"0.5\">\n";
    for (std::size_t s = 0; s < opt.highlights[h].size(); ++s) {
      auto pts = opt.highlights[h].points(s);
      if (pts.size() == 3)
        polygon(pts, "");
      else if (pts.size() == 2)
        segment(pts[0], pts[1], "stroke-width=\"6\"");
    }
    os << "</g>\n";
  }
  os << "<g class=\"complex\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.2\">\n";
  for (std::size_t s = 0; s < t.size(); ++s) {
    auto pts = t.points(s);
    if (pts.size() == 3)
      polygon(pts, "");
    else if (pts.size() == 2)
      segment(pts[0], pts[1], "");
  }
  os << "</g>\n<g class=\"vertices\" font-family=\"monospace\" font-size=\"10\">\n";
  for (const auto& v : t.vertices()) {
    auto [x, y] = px(v);
    os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2.5\" fill=\"#222222\"/>\n";
    if (opt.labels) {
      auto h = to_homogeneous(v);
      os << "<text x=\"" << x + 4 << "\" y=\"" << y - 4 << "\">[" << h[0] << ',' << h[1] << ',' << h[2]
         << "]</text>\n";
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace mvr

#endif  // MVR_SVG_HPP
