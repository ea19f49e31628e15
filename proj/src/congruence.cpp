#include "fairtile/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fairtile/error.hpp"

namespace fairtile {

namespace {

constexpr double kLeadingFloor = 1e-14;
constexpr double kDiscriminantSnap = 1e-12;
constexpr double kRootMerge = 1e-9;

std::vector<double> edge_lengths(const Polygon& p) {
  std::vector<double> out;
  for (const Point& e : edge_vectors(p)) out.push_back(norm(e));
  return out;
}

std::vector<Point> triangle_edges(const Triangle& t) {
  return {t.v[1] - t.v[0], t.v[2] - t.v[1], t.v[0] - t.v[2]};
}

// Orient so y >= 0, and x > 0 when y == 0; e and -e have the same sheared length.
Point upper_half(Point e) {
  if (e.y < 0.0 || (e.y == 0.0 && e.x < 0.0)) return -e;
  return e;
}

void merge_roots(std::vector<double>& roots) {
  std::sort(roots.begin(), roots.end());
  std::vector<double> kept;
  for (double r : roots) {
    if (kept.empty() || r - kept.back() > kRootMerge) kept.push_back(r);
  }
  roots = std::move(kept);
}

void append(ShearRootSet& into, const ShearRootSet& from) {
  into.roots.insert(into.roots.end(), from.roots.begin(), from.roots.end());
  into.degenerate = into.degenerate || from.degenerate;
}

// Candidate cycle k of 2n: rotations of the forward cycle, then of the reversed one.
SignatureEntry cycle_entry(const std::vector<SignatureEntry>& c, std::size_t k, std::size_t pos) {
  const std::size_t n = c.size();
  if (k < n) return c[(k + pos) % n];
  // Reversed traversal starting at vertex r: vertex r - pos, edge from r-pos-1 to r-pos.
  const std::size_t r = k - n;
  const std::size_t vtx = (r + n * 2 - pos % n) % n;
  const std::size_t edge = (vtx + n - 1) % n;
  return SignatureEntry{c[edge].edge_length, c[vtx].interior_angle};
}

std::int64_t quantize(double v, double quantum) {
  return static_cast<std::int64_t>(std::llround(v / quantum));
}

}  // namespace

double area(const Polygon& p) {
  const double a = signed_area(p.vertices);
  if (!(std::isfinite(a) && a > 0.0)) {
    throw Error(ErrorKind::DegeneratePolygon, "non-positive area " + std::to_string(a));
  }
  return a;
}

double perimeter(const Polygon& p) {
  double s = 0.0;
  for (const Point& e : edge_vectors(p)) s += norm(e);
  return s;
}

std::vector<Point> edge_vectors(const Polygon& p) {
  const std::size_t n = p.vertices.size();
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(p.vertices[(k + 1) % n] - p.vertices[k]);
  return out;
}

double vertical_width(const Polygon& p) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Point& v : p.vertices) {
    lo = std::min(lo, v.y);
    hi = std::max(hi, v.y);
  }
  return hi - lo;
}

double vertical_width(const Triangle& t) { return vertical_width(Polygon::of(t)); }

std::vector<double> interior_angles(const Polygon& p) {
  const std::size_t n = p.vertices.size();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Point in = p.vertices[k] - p.vertices[(k + n - 1) % n];
    const Point outv = p.vertices[(k + 1) % n] - p.vertices[k];
    const double turn = std::atan2(cross(in, outv), dot(in, outv));
    out[k] = std::numbers::pi - turn;
  }
  return out;
}

std::vector<SignatureEntry> signature_cycle(const Polygon& p) {
  Polygon q = p;
  if (signed_area(q.vertices) < 0.0) std::reverse(q.vertices.begin(), q.vertices.end());
  const auto len = edge_lengths(q);
  const auto ang = interior_angles(q);
  std::vector<SignatureEntry> c(len.size());
  for (std::size_t k = 0; k < len.size(); ++k) c[k] = {len[k], ang[k]};
  return c;
}

Signature congruence_signature(const Polygon& p, double quantum) {
  const auto c = signature_cycle(p);
  const std::size_t n = c.size();
  Signature best;
  best.quantum = quantum;
  bool have = false;
  for (std::size_t k = 0; k < 2 * n; ++k) {
    Signature cand;
    cand.quantum = quantum;
    for (std::size_t pos = 0; pos < n; ++pos) {
      const SignatureEntry e = cycle_entry(c, k, pos);
      cand.canonical.push_back(e);
      cand.quantized.push_back(quantize(e.edge_length, quantum));
      cand.quantized.push_back(quantize(e.interior_angle, quantum));
    }
    bool better = !have || cand.quantized < best.quantized;
    if (have && cand.quantized == best.quantized) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto& a = cand.canonical[i];
        const auto& b = best.canonical[i];
        if (a.edge_length != b.edge_length) { better = a.edge_length < b.edge_length; break; }
        if (a.interior_angle != b.interior_angle) { better = a.interior_angle < b.interior_angle; break; }
      }
    }
    if (better) {
      best = std::move(cand);
      have = true;
    }
  }
  return best;
}

double signature_distance(const std::vector<SignatureEntry>& p,
                          const std::vector<SignatureEntry>& q) {
  if (p.size() != q.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = p.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < 2 * n; ++k) {
    double worst = 0.0;
    for (std::size_t pos = 0; pos < n && worst < best; ++pos) {
      const SignatureEntry e = cycle_entry(q, k, pos);
      worst = std::max({worst, std::abs(p[pos].edge_length - e.edge_length),
                        std::abs(p[pos].interior_angle - e.interior_angle)});
    }
    best = std::min(best, worst);
  }
  return best;
}

double signature_distance(const Polygon& p, const Polygon& q) {
  return signature_distance(signature_cycle(p), signature_cycle(q));
}

bool congruent(const Polygon& p, const Polygon& q, double tol) {
  if (p.vertices.size() != q.vertices.size()) return false;
  if (p.vertices.size() == 3) {
    auto lp = edge_lengths(p);
    auto lq = edge_lengths(q);
    std::sort(lp.begin(), lp.end());
    std::sort(lq.begin(), lq.end());
    for (std::size_t k = 0; k < 3; ++k) {
      if (std::abs(lp[k] - lq[k]) > tol) return false;
    }
    return true;
  }
  return signature_distance(p, q) <= tol;
}

bool halfturn_translate_congruent(const Triangle& t, const Triangle& u, double tol) {
  const auto et = triangle_edges(t);
  const auto eu = triangle_edges(u);
  for (double s : {1.0, -1.0}) {
    for (std::size_t r = 0; r < 3; ++r) {
      bool all = true;
      for (std::size_t k = 0; k < 3 && all; ++k) {
        const Point d = eu[(k + r) % 3] - s * et[k];
        all = std::abs(d.x) <= tol && std::abs(d.y) <= tol;
      }
      if (all) return true;
    }
  }
  return false;
}

ShearRootSet solve_quadratic(double a, double b, double c) {
  ShearRootSet out;
  if (std::abs(a) > kLeadingFloor) {
    const double p = b / a;
    const double q = c / a;
    double disc = 0.25 * p * p - q;
    if (std::abs(disc) <= kDiscriminantSnap) disc = 0.0;
    if (disc < 0.0) return out;
    if (disc == 0.0) {
      out.roots.push_back(-0.5 * p);
      return out;
    }
    // Avoid cancellation: take the larger-magnitude root first.
    const double big = -0.5 * p - std::copysign(std::sqrt(disc), p);
    const double small = big != 0.0 ? q / big : 0.0;
    out.roots = {std::min(big, small), std::max(big, small)};
    return out;
  }
  if (std::abs(b) > kLeadingFloor) {
    out.roots.push_back(-c / b);
  } else if (std::abs(c) <= kLeadingFloor) {
    out.degenerate = true;
  }
  return out;
}

ShearRootSet edge_pair_roots(Point e0, Point ei) {
  e0 = upper_half(e0);
  ei = upper_half(ei);
  const double a = e0.y * e0.y - ei.y * ei.y;
  const double b = 2.0 * (e0.x * e0.y - ei.x * ei.y);
  const double c = e0.x * e0.x + e0.y * e0.y - ei.x * ei.x - ei.y * ei.y;
  return solve_quadratic(a, b, c);
}

ShearRootSet co_shear_roots(const Triangle& t, const Triangle& u, double tol) {
  const auto et = triangle_edges(t);
  const auto eu = triangle_edges(u);
  // Pick the edge of t farthest from being a translate of any (signed) edge of u.
  double best_gap = -1.0;
  Point e0{};
  for (const Point& e : et) {
    double gap = std::numeric_limits<double>::infinity();
    for (const Point& f : eu) gap = std::min({gap, norm(e - f), norm(e + f)});
    if (gap > best_gap) {
      best_gap = gap;
      e0 = e;
    }
  }
  if (best_gap <= tol || halfturn_translate_congruent(t, u, tol)) {
    throw Error(ErrorKind::DegeneratePair, "triangles agree up to translation and half-turn");
  }
  ShearRootSet out;
  for (const Point& f : eu) append(out, edge_pair_roots(e0, f));
  merge_roots(out.roots);
  return out;
}

ShearRootSet shear_vs_fixed_roots(const Triangle& t, const Triangle& u) {
  const auto et = triangle_edges(t);
  Point e0 = et[0];
  for (const Point& e : et) {
    if (std::abs(e.y) > std::abs(e0.y)) e0 = e;
  }
  ShearRootSet out;
  for (const Point& f : triangle_edges(u)) append(out, edge_pair_roots(e0, Point{norm(f), 0.0}));
  merge_roots(out.roots);
  return out;
}

ShearRootSet bad_shear_set(const Triangle& t, const Triangle& u) {
  ShearRootSet out = co_shear_roots(t, u);
  append(out, shear_vs_fixed_roots(t, u));
  merge_roots(out.roots);
  return out;
}

ShearRootSet equilateral_shear_set(const Triangle& t) {
  const auto e = triangle_edges(t);
  double best = 0.0;
  std::size_t bi = 0, bj = 1;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double gap = std::abs(std::abs(e[i].y) - std::abs(e[j].y));
      if (gap > best) {
        best = gap;
        bi = i;
        bj = j;
      }
    }
  }
  if (!(best > kLeadingFloor)) {
    throw Error(ErrorKind::NoUnequalHeights, "all edge heights agree in magnitude");
  }
  ShearRootSet out = edge_pair_roots(e[bi], e[bj]);
  merge_roots(out.roots);
  return out;
}

Triangle shear(const Triangle& t, double mu) {
  Triangle out = t;
  for (Point& p : out.v) p = sheared(p, mu);
  return out;
}

bool is_equilateral(const Triangle& t, double tol) {
  auto l = edge_lengths(Polygon::of(t));
  const auto [lo, hi] = std::minmax_element(l.begin(), l.end());
  return *hi - *lo <= tol;
}

}  // namespace fairtile
