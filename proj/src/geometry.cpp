#include "fairtile/geometry.hpp"

#include "fairtile/error.hpp"

namespace fairtile {

std::string to_string(const TileId& id) {
  return "(" + std::to_string(id.strip) + "," + std::to_string(id.col) + "," +
         std::to_string(id.slot) + ")";
}

char corner_letter(Corner c) {
  switch (c) {
    case Corner::A: return 'A';
    case Corner::B: return 'B';
    case Corner::C: return 'C';
  }
  return '?';
}

double signed_area(std::span<const Point> pts) {
  if (pts.size() < 3) return 0.0;
  const Point o = pts[0];
  double twice = 0.0;
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    twice += cross(pts[k] - o, pts[k + 1] - o);
  }
  return 0.5 * twice;
}

bool is_convex(std::span<const Point> pts, double tol) {
  const std::size_t n = pts.size();
  if (n < 3) return false;
  int sign = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Point e0 = pts[(k + 1) % n] - pts[k];
    const Point e1 = pts[(k + 2) % n] - pts[(k + 1) % n];
    const double c = cross(e0, e1);
    if (!(std::abs(c) > tol)) return false;
    const int s = c > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    else if (s != sign) return false;
  }
  return true;
}

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DenominatorVanished: return "DenominatorVanished";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::NoUnequalHeights: return "NoUnequalHeights";
    case ErrorKind::ExhaustedRetries: return "ExhaustedRetries";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::NonConvexOutput: return "NonConvexOutput";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::EdgeOutOfRange: return "EdgeOutOfRange";
    case ErrorKind::OutOfBasin: return "OutOfBasin";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<TileId> tile)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + message),
      kind_(kind),
      tile_(tile) {}

}  // namespace fairtile
