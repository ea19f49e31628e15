#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fairtile {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator-(Point a) { return {-a.x, -a.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

// Horizontal shear (x, y) -> (x + mu*y, y).
inline Point sheared(Point p, double mu) { return {p.x + mu * p.y, p.y}; }

// Tile index: strip row, column i, slot j in {1,2,3,4}. Column 0 has slots 1 and 4 only.
struct TileId {
  int strip = 0;
  int col = 0;
  int slot = 1;
  auto operator<=>(const TileId&) const = default;
};

std::string to_string(const TileId& id);

enum class Corner { A, B, C };

char corner_letter(Corner c);

struct Triangle {
  std::array<Point, 3> v{};
  TileId id{};
};

struct Quadrangle {
  std::array<Point, 4> v{};
  std::optional<TileId> source;
  std::optional<Corner> corner;
};

// Signed shoelace area, evaluated relative to the first vertex to limit cancellation.
double signed_area(std::span<const Point> pts);

// Strict convexity: every consecutive edge cross product exceeds tol in magnitude with a common sign.
bool is_convex(std::span<const Point> pts, double tol = 1e-12);

}  // namespace fairtile
