#pragma once

#include <optional>
#include <string>

#include "fairtile/document.hpp"

namespace fairtile {

struct ViewBox {
  double x = 0.0;  // lower-left corner in document coordinates
  double y = 0.0;
  double width = 1.0;
  double height = 1.0;
};

struct RenderOptions {
  double stroke_width = 0.02;  // document units
  std::optional<ViewBox> viewbox;  // default: bounding box plus a small margin
  bool label_tiles = false;
  double scale = 40.0;  // px per document unit
};

// SVG 1.1 with one path per tile. The y axis is flipped here only.
std::string render_svg(const TilingDocument& doc, const RenderOptions& opts = {});

}  // namespace fairtile
