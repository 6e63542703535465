#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "../complex.hpp"
#include "../error.hpp"
#include "../polyhedron.hpp"
#include "../rational.hpp"

namespace tropex::cli {

struct Viewport {
  Rational xmin, xmax, ymin, ymax;
};

// Bounding box of all vertices (the origin when there are none), padded by max(2, extent / 4).
inline Viewport default_viewport(const PolyhedralComplex& w) {
  std::optional<Viewport> box;
  for (const auto& c : w.cells())
    for (const auto& v : c.vertices()) {
      if (!box) {
        box = Viewport{v[0], v[0], v[1], v[1]};
        continue;
      }
      box->xmin = std::min(box->xmin, v[0]);
      box->xmax = std::max(box->xmax, v[0]);
      box->ymin = std::min(box->ymin, v[1]);
      box->ymax = std::max(box->ymax, v[1]);
    }
  Viewport b = box.value_or(Viewport{0, 0, 0, 0});
  Rational pad = std::max(Rational(2), Rational(std::max(b.xmax - b.xmin, b.ymax - b.ymin) / 4));
  return {b.xmin - pad, b.xmax + pad, b.ymin - pad, b.ymax + pad};
}

// Cells clipped to the viewport: polygons, segments, vertices, then labels for weights >= 2.
inline std::string render_svg(const PolyhedralComplex& w, const std::optional<Viewport>& viewport = std::nullopt) {
  if (w.is_abstract() || w.ambient_dim() != 2) fail(ErrorCode::NotTwoDimensional, "only complexes in the plane can be drawn");
  Viewport vp = viewport.value_or(default_viewport(w));
  if (!(vp.xmin < vp.xmax && vp.ymin < vp.ymax)) fail(ErrorCode::InvalidArgument, "viewport is empty");
  Polyhedron box = Polyhedron::from_hrep(2, {{Rational(-vp.xmin), {Integer(1), Integer(0)}},
                                             {Rational(vp.xmax), {Integer(-1), Integer(0)}},
                                             {Rational(-vp.ymin), {Integer(0), Integer(1)}},
                                             {Rational(vp.ymax), {Integer(0), Integer(-1)}}});
  constexpr double size = 400;
  double x0 = vp.xmin.get_d(), x1 = vp.xmax.get_d(), y0 = vp.ymin.get_d(), y1 = vp.ymax.get_d();
  auto px = [&](const Rational& x) { return (x.get_d() - x0) / (x1 - x0) * size; };
  auto py = [&](const Rational& y) { return (y1 - y.get_d()) / (y1 - y0) * size; };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };

  std::string polys, lines, dots, labels;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Polyhedron c = w.cell(i).intersect(box);
    if (c.is_empty() || c.affine_dim() != w.cell(i).affine_dim()) continue;
    const auto& vs = c.vertices();
    if (c.affine_dim() == 2) {
      double cx = 0, cy = 0;
      for (const auto& v : vs) {
        cx += v[0].get_d();
        cy += v[1].get_d();
      }
      cx /= static_cast<double>(vs.size());
      cy /= static_cast<double>(vs.size());
      std::vector<std::pair<double, std::size_t>> order;
      for (std::size_t k = 0; k < vs.size(); ++k)
        order.emplace_back(std::atan2(vs[k][1].get_d() - cy, vs[k][0].get_d() - cx), k);
      std::sort(order.begin(), order.end());
      polys += "<polygon points=\"";
      for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& v = vs[order[k].second];
        polys += (k ? " " : "") + num(px(v[0])) + "," + num(py(v[1]));
      }
      polys += "\" fill=\"#dde6f0\" stroke=\"none\"/>\n";
    } else if (c.affine_dim() == 1 && vs.size() == 2) {
      lines += "<line x1=\"" + num(px(vs[0][0])) + "\" y1=\"" + num(py(vs[0][1])) + "\" x2=\"" + num(px(vs[1][0])) +
               "\" y2=\"" + num(py(vs[1][1])) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
      if (w.weight(i) >= 2) {
        Rational mx = (vs[0][0] + vs[1][0]) / 2, my = (vs[0][1] + vs[1][1]) / 2;
        labels += "<text x=\"" + num(px(mx) + 4) + "\" y=\"" + num(py(my) - 4) + "\" font-size=\"14\">" +
                  to_string(w.weight(i)) + "</text>\n";
      }
    } else if (c.affine_dim() == 0) {
      dots += "<circle cx=\"" + num(px(vs[0][0])) + "\" cy=\"" + num(py(vs[0][1])) + "\" r=\"3\" fill=\"black\"/>\n";
    }
  }
  std::string body = polys + lines + dots + labels;
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n"
         "<g id=\"complex\">" +
         (body.empty() ? "" : "\n" + body) + "</g>\n</svg>\n";
}

}  // namespace tropex::cli
