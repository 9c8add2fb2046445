#ifndef LAMINA_RENDER_HPP
#define LAMINA_RENDER_HPP

#include <cmath>
#include <cstdio>

#include "lamina/lamination.hpp"

namespace lamina {

enum class GeodesicStyle { straight, hyperbolic };

struct RenderSpec {
  int size = 512;
  GeodesicStyle style = GeodesicStyle::hyperbolic;
  bool labels = false;
  std::vector<Chord> highlight;
  bool shade_gaps = false;
};

// chords and shaded polygons to draw; polygons get geodesic edges
struct Scene {
  std::vector<Chord> chords;
  std::vector<ConvexSet> shaded;
};

namespace detail {

inline std::string num12(long double x) {
  if (std::fabs(x) < 1e-12L) x = 0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12Lg", x);
  return buf;
}

struct Canvas {
  long double cx, cy, radius;
  explicit Canvas(const RenderSpec& s) {
    long double margin = s.labels ? s.size * 0.08L : s.size * 0.02L;
    cx = cy = s.size / 2.0L;
    radius = s.size / 2.0L - margin;
  }
  // unit disk point to screen, y pointing down
  std::pair<long double, long double> screen(long double x, long double y) const { return {cx + radius * x, cy - radius * y}; }
  std::pair<long double, long double> at(const Angle& a) const {
    long double t = 2 * M_PIl * a.value().get_d();
    return screen(std::cos(t), std::sin(t));
  }
};

inline std::string point(const std::pair<long double, long double>& p) { return num12(p.first) + " " + num12(p.second); }

// path segment from a to b along the geodesic, starting pen position at a
inline std::string geodesic_to(const Canvas& cv, const Angle& a, const Angle& b, GeodesicStyle style) {
  Q len = shortest_dist(a, b);
  auto pb = cv.at(b);
  if (style == GeodesicStyle::straight || len == Q(1, 2)) return "L " + point(pb);
  // orthogonal circle: center (P(a)+P(b))/(1+cos D), radius tan(D/2)
  long double delta = 2 * M_PIl * len.get_d();
  long double ta = 2 * M_PIl * a.value().get_d(), tb = 2 * M_PIl * b.value().get_d();
  long double k = 1 / (1 + std::cos(delta));
  long double ux = (std::cos(ta) + std::cos(tb)) * k, uy = (std::sin(ta) + std::sin(tb)) * k;
  long double r = std::tan(delta / 2);
  long double norm = std::hypot(ux, uy);
  long double mx = ux * (1 - r / norm), my = uy * (1 - r / norm);
  auto c = cv.screen(ux, uy), m = cv.screen(mx, my), pa = cv.at(a);
  long double cross = (pa.first - c.first) * (m.second - c.second) - (pa.second - c.second) * (m.first - c.first);
  std::string rs = num12(r * cv.radius);
  return "A " + rs + " " + rs + " 0 0 " + (cross > 0 ? "1 " : "0 ") + point(pb);
}

inline std::string chord_path(const Canvas& cv, const Chord& c, GeodesicStyle style) {
  return "M " + point(cv.at(c.a())) + " " + geodesic_to(cv, c.a(), c.b(), style);
}

inline std::string polygon_path(const Canvas& cv, const ConvexSet& s, GeodesicStyle style) {
  const auto& v = s.vertices();
  std::string d = "M " + point(cv.at(v[0]));
  for (std::size_t i = 0; i < v.size(); ++i) d += " " + geodesic_to(cv, v[i], v[(i + 1) % v.size()], style);
  return d + " Z";
}

}  // namespace detail

inline std::string render_svg(const Scene& scene, const RenderSpec& spec) {
  detail::Canvas cv(spec);
  std::string n = std::to_string(spec.size);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + n + "\" height=\"" + n + "\" viewBox=\"0 0 " + n + " " + n +
                    "\">\n";
  out +=
      "<style>.circle{fill:none;stroke:#000;stroke-width:1}.leaf{fill:none;stroke:#1f4e99;stroke-width:1}"
      ".highlight{fill:none;stroke:#c0392b;stroke-width:2}.gap{fill:#d6e4f5;stroke:none}.label{font:10px sans-serif}</style>\n";
  for (const auto& s : scene.shaded)
    if (s.size() >= 3) out += "<path class=\"gap\" d=\"" + detail::polygon_path(cv, s, spec.style) + "\"/>\n";
  out += "<circle class=\"circle\" cx=\"" + detail::num12(cv.cx) + "\" cy=\"" + detail::num12(cv.cy) + "\" r=\"" +
         detail::num12(cv.radius) + "\"/>\n";
  std::set<Chord> hl(spec.highlight.begin(), spec.highlight.end());
  std::set<Chord> drawn;
  for (const auto& c : scene.chords) {
    if (hl.count(c) || !drawn.insert(c).second) continue;
    out += "<path class=\"leaf\" d=\"" + detail::chord_path(cv, c, spec.style) + "\"/>\n";
  }
  for (const auto& c : hl) out += "<path class=\"highlight\" d=\"" + detail::chord_path(cv, c, spec.style) + "\"/>\n";
  if (spec.labels) {
    std::set<Angle> pts;
    for (const auto& c : scene.chords) pts.insert({c.a(), c.b()});
    for (const auto& c : hl) pts.insert({c.a(), c.b()});
    for (const auto& p : pts) {
      long double t = 2 * M_PIl * p.value().get_d();
      long double f = 1.05L;
      auto q = cv.screen(f * std::cos(t), f * std::sin(t));
      out += "<text class=\"label\" x=\"" + detail::num12(q.first) + "\" y=\"" + detail::num12(q.second) +
             "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" + p.str() + "</text>\n";
    }
  }
  return out + "</svg>\n";
}

inline std::string render_svg(const FiniteLamination& lam, const RenderSpec& spec) {
  Scene scene{{lam.leaves().begin(), lam.leaves().end()}, {}};
  if (spec.shade_gaps)
    for (const auto& g : gaps(lam))
      if (g.finite() && g.vertices.size() >= 3) scene.shaded.push_back(g.hull());
  return render_svg(scene, spec);
}

}  // namespace lamina

#endif  // LAMINA_RENDER_HPP
