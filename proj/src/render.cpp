#include "fairtile/render.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>

#include "fairtile/error.hpp"

namespace fairtile {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* fill_for(const Tile& t) {
  if (t.key.corner) {
    switch (*t.key.corner) {
      case Corner::A: return "#c9c9c9";
      case Corner::B: return "#f2f2f2";
      case Corner::C: return "#e0e0e0";
    }
  }
  static const char* const kSlots[] = {"#dbe8f6", "#f6e7d2", "#dff2de", "#efdcef"};
  return kSlots[(t.key.id.slot - 1 + 4) % 4];
}

ViewBox bounding_view(const TilingDocument& doc) {
  double xl = std::numeric_limits<double>::infinity(), yl = xl, xh = -xl, yh = -xl;
  for (const Tile& t : doc.tiles) {
    for (const Point& p : t.vertices) {
      xl = std::min(xl, p.x);
      xh = std::max(xh, p.x);
      yl = std::min(yl, p.y);
      yh = std::max(yh, p.y);
    }
  }
  if (doc.tiles.empty()) return {};
  const double pad = 0.02 * std::max({xh - xl, yh - yl, 1.0});
  return {xl - pad, yl - pad, xh - xl + 2 * pad, yh - yl + 2 * pad};
}

}  // namespace

std::string render_svg(const TilingDocument& doc, const RenderOptions& opts) {
  if (!(opts.scale > 0.0)) throw Error(ErrorKind::InvalidParameter, "scale must be positive");
  const ViewBox vb = opts.viewbox.value_or(bounding_view(doc));
  if (!(vb.width > 0.0 && vb.height > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "viewbox must be nonempty");
  }
  const double s = opts.scale;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(vb.width * s) + "\" height=\"" + num(vb.height * s) + "\" viewBox=\"" +
         num(vb.x * s) + " " + num(-(vb.y + vb.height) * s) + " " + num(vb.width * s) + " " +
         num(vb.height * s) + "\">\n";
  out += "<g stroke=\"#222\" stroke-width=\"" + num(opts.stroke_width * s) +
         "\" stroke-linejoin=\"round\">\n";
  for (const Tile& t : doc.tiles) {
    std::string d;
    for (std::size_t k = 0; k < t.vertices.size(); ++k) {
      d += (k == 0 ? "M" : " L") + num(t.vertices[k].x * s) + " " + num(-t.vertices[k].y * s);
    }
    d += " Z";
    out += "<path id=\"t" + std::to_string(&t - doc.tiles.data()) + "\" fill=\"" + fill_for(t) +
           "\" d=\"" + d + "\"/>\n";
  }
  out += "</g>\n";
  if (opts.label_tiles) {
    out += "<g font-family=\"sans-serif\" font-size=\"" + num(0.25 * s) +
           "\" text-anchor=\"middle\" fill=\"#000\">\n";
    for (const Tile& t : doc.tiles) {
      Point c{};
      for (const Point& p : t.vertices) c = c + p;
      c = (1.0 / static_cast<double>(t.vertices.size())) * c;
      out += "<text x=\"" + num(c.x * s) + "\" y=\"" + num(-c.y * s) + "\">" + to_string(t.key) +
             "</text>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fairtile
