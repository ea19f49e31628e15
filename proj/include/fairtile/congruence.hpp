#pragma once

#include <cstdint>
#include <vector>

#include "fairtile/geometry.hpp"

namespace fairtile {

struct Polygon {
  std::vector<Point> vertices;  // counterclockwise

  static Polygon of(const Triangle& t) { return {{t.v.begin(), t.v.end()}}; }
  static Polygon of(const Quadrangle& q) { return {{q.v.begin(), q.v.end()}}; }
};

// Throws DegeneratePolygon unless the signed area is finite and positive.
double area(const Polygon& p);
double perimeter(const Polygon& p);
std::vector<Point> edge_vectors(const Polygon& p);  // v[k+1] - v[k]

double vertical_width(const Triangle& t);
double vertical_width(const Polygon& p);

// Equality up to isometry (reflections included). Triangles compare sorted
// edge lengths; larger polygons compare unquantized signatures.
bool congruent(const Polygon& p, const Polygon& q, double tol);

// Equality up to translation and an optional half-turn: the edge vectors of u
// match a cyclic relabelling of the edge vectors of t or of -t.
bool halfturn_translate_congruent(const Triangle& t, const Triangle& u, double tol);

struct SignatureEntry {
  double edge_length = 0.0;
  double interior_angle = 0.0;
};

// Lexicographically least (edge, angle) cycle over both orientations and all
// rotations, compared on values rounded to multiples of quantum.
struct Signature {
  double quantum = 1e-9;
  std::vector<std::int64_t> quantized;
  std::vector<SignatureEntry> canonical;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.quantized == b.quantized;
  }
};

Signature congruence_signature(const Polygon& p, double quantum = 1e-9);

// Interior angle at each vertex, in radians, for a counterclockwise polygon.
std::vector<double> interior_angles(const Polygon& p);

// The (edge, angle) cycle in stored order: entry k is |v[k+1]-v[k]| and the
// angle at v[k].
std::vector<SignatureEntry> signature_cycle(const Polygon& p);

// Smallest over all 2n vertex correspondences of the largest absolute
// difference between matched lengths and angles. Zero iff congruent.
double signature_distance(const std::vector<SignatureEntry>& p,
                          const std::vector<SignatureEntry>& q);
double signature_distance(const Polygon& p, const Polygon& q);

struct ShearRootSet {
  std::vector<double> roots;  // ascending
  bool degenerate = false;    // the defining equation holds for every mu
};

// Real roots of a*m^2 + b*m + c = 0 with the conventions described in the README.
ShearRootSet solve_quadratic(double a, double b, double c);

// Values of mu at which the sheared edges e0 and ei have equal length.
ShearRootSet edge_pair_roots(Point e0, Point ei);

// mu with Sh_mu(t) possibly congruent to Sh_mu(u). Throws DegeneratePair if t ~ u.
ShearRootSet co_shear_roots(const Triangle& t, const Triangle& u, double tol = 1e-12);

// mu with Sh_mu(t) possibly congruent to the fixed triangle u.
ShearRootSet shear_vs_fixed_roots(const Triangle& t, const Triangle& u);

// Union of the two families above, deduplicated within 1e-9.
ShearRootSet bad_shear_set(const Triangle& t, const Triangle& u);

// mu with Sh_mu(t) possibly equilateral. Throws NoUnequalHeights.
ShearRootSet equilateral_shear_set(const Triangle& t);

Triangle shear(const Triangle& t, double mu);

bool is_equilateral(const Triangle& t, double tol);

}  // namespace fairtile
