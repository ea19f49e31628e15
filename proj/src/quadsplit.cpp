#include "fairtile/quadsplit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fairtile/congruence.hpp"
#include "fairtile/error.hpp"
#include "fairtile/parallel.hpp"

namespace fairtile {

namespace {

// Forward-mode dual number carrying a gradient with respect to three unknowns.
struct Dual {
  double v = 0.0;
  std::array<double, 3> d{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  static Dual var(double value, int k) {
    Dual x(value);
    x.d[k] = 1.0;
    return x;
  }
};

Dual operator+(const Dual& a, const Dual& b) {
  Dual r(a.v + b.v);
  for (int k = 0; k < 3; ++k) r.d[k] = a.d[k] + b.d[k];
  return r;
}
Dual operator-(const Dual& a, const Dual& b) {
  Dual r(a.v - b.v);
  for (int k = 0; k < 3; ++k) r.d[k] = a.d[k] - b.d[k];
  return r;
}
Dual operator*(const Dual& a, const Dual& b) {
  Dual r(a.v * b.v);
  for (int k = 0; k < 3; ++k) r.d[k] = a.d[k] * b.v + a.v * b.d[k];
  return r;
}
Dual operator/(const Dual& a, const Dual& b) {
  Dual r(a.v / b.v);
  for (int k = 0; k < 3; ++k) r.d[k] = (a.d[k] * b.v - a.v * b.d[k]) / (b.v * b.v);
  return r;
}
Dual sqrt(const Dual& a) {
  Dual r(std::sqrt(a.v));
  for (int k = 0; k < 3; ++k) r.d[k] = a.d[k] / (2.0 * r.v);
  return r;
}

double value(double x) { return x; }
double value(const Dual& x) { return x.v; }

template <class T>
struct P2 {
  T x, y;
};

template <class T>
T dist(const P2<T>& p, const P2<T>& q) {
  using std::sqrt;
  const T dx = p.x - q.x;
  const T dy = p.y - q.y;
  return sqrt(dx * dx + dy * dy);
}

template <class T>
T det2(const P2<T>& p, const P2<T>& q) {
  return p.x * q.y - p.y * q.x;
}

template <class T>
P2<T> sub(const P2<T>& p, const P2<T>& q) {
  return {p.x - q.x, p.y - q.y};
}

template <class T>
std::pair<T, T> xi_eta_t(const T& al, const T& be, const T& ga) {
  const T den = T(3.0) * (T(1.0) - al - be - ga + al * be + al * ga + be * ga);
  if (!(std::abs(value(den)) > 1e-10)) {
    throw Error(ErrorKind::SingularDenominator, "equal-area denominator vanishes");
  }
  return {(T(1.0) - T(2.0) * al - ga + T(3.0) * al * ga) / den,
          (T(1.0) - be - T(2.0) * ga + T(3.0) * be * ga) / den};
}

template <class T>
std::array<T, 3> fair_residuals(double a, double b, double c, const T& al, const T& be,
                                const T& ga) {
  const Point ap = apex(a, b, c);
  const auto [xi, eta] = xi_eta_t(al, be, ga);
  const P2<T> cp{al * a, T(0.0)};
  const P2<T> bp{(T(1.0) - be) * ap.x, (T(1.0) - be) * ap.y};
  const P2<T> app{(T(1.0) - ga) * a + ga * ap.x, ga * ap.y};
  const P2<T> m{xi * a + eta * ap.x, eta * ap.y};
  const T d_cm = dist(m, cp);
  const T d_bm = dist(m, bp);
  const T d_am = dist(m, app);
  const T p0(FairConstants::p0());
  return {al * a + d_cm + d_bm + (T(1.0) - be) * b - p0,
          be * b + d_bm + d_am + (T(1.0) - ga) * c - p0,
          ga * c + d_am + d_cm + (T(1.0) - al) * a - p0};
}

template <class T>
std::array<T, 3> recon_residuals(const std::array<double, 5>& q, const T& rho, const T& sigma,
                                 const T& tau) {
  const P2<T> ah{T(q[0]), T(0.0)};
  const P2<T> x{T(q[1]), T(q[2])};
  const P2<T> z{T(q[3]), T(q[4])};
  const P2<T> bb{rho * q[0], T(0.0)};
  const P2<T> cc{sigma * q[1], sigma * q[2]};
  const P2<T> p{(T(1.0) - tau) * bb.x + tau * cc.x, (T(1.0) - tau) * bb.y + tau * cc.y};
  const T half(0.5);
  const T area1 = half * det2(ah, x) + half * det2(sub(x, z), sub(ah, z));
  const T area2 = half * det2(sub(p, bb), sub(ah, bb)) + half * det2(sub(ah, z), sub(p, z));
  const T area3 = half * det2(sub(x, cc), sub(p, cc)) + half * det2(sub(p, z), sub(x, z));
  const T perim = dist(p, bb) + dist(ah, bb) + dist(ah, z) + dist(p, z);
  return {area1 - area2, area1 - area3, perim - T(FairConstants::p0())};
}

Mat3 gradient_rows(const std::array<Dual, 3>& f) {
  Mat3 j{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) j[r][c] = f[r].d[c];
  return j;
}

Point rotate_into(Point p, Point origin, Point u) {
  // World point -> frame with origin at `origin` and x-axis along unit vector u.
  const Point d = p - origin;
  return {dot(d, u), cross(u, d)};
}

Point rotate_out(Point p, Point origin, Point u) {
  return origin + p.x * u + p.y * Point{-u.y, u.x};
}

bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}  // namespace

double FairConstants::p0() { return 1.0 + std::sqrt(2.0) - std::sqrt(6.0) / 3.0; }
double FairConstants::alpha0() { return 1.0 - std::sqrt(3.0) / 3.0; }
double FairConstants::rho0() { return (3.0 + std::sqrt(3.0)) / 2.0; }
double FairConstants::sigma0() { return std::sqrt(3.0); }
double FairConstants::tau0() { return 1.0 - std::sqrt(3.0) / 3.0; }
std::array<double, 5> FairConstants::posed_quad0() {
  const double r3 = std::sqrt(3.0);
  return {1.0 - r3 / 3.0, r3 / 6.0, 0.5, 0.5, r3 / 6.0};
}

Point apex(double a, double b, double c) {
  const double a2 = a * a, b2 = b * b, c2 = c * c;
  const double rad = 2.0 * a2 * b2 + 2.0 * a2 * c2 + 2.0 * b2 * c2 - a2 * a2 - b2 * b2 - c2 * c2;
  if (!(a > 0.0 && b > 0.0 && c > 0.0) || !(rad > 1e-14)) {
    throw Error(ErrorKind::DegenerateTriangle, "edges " + std::to_string(a) + ", " +
                                                   std::to_string(b) + ", " + std::to_string(c));
  }
  return {(a2 + b2 - c2) / (2.0 * a), std::sqrt(rad) / (2.0 * a)};
}

std::pair<double, double> xi_eta(double alpha, double beta, double gamma) {
  return xi_eta_t(alpha, beta, gamma);
}

Vec3 perimeter_residuals(double a, double b, double c, const Vec3& abg) {
  return fair_residuals(a, b, c, abg[0], abg[1], abg[2]);
}

Mat3 perimeter_jacobian(double a, double b, double c, const Vec3& abg) {
  return gradient_rows(
      fair_residuals(a, b, c, Dual::var(abg[0], 0), Dual::var(abg[1], 1), Dual::var(abg[2], 2)));
}

std::array<Quadrangle, 3> quad_vertices(double a, double b, double c, const FairSplitParams& p) {
  const Point ap = apex(a, b, c);
  const Point A{0.0, 0.0};
  const Point B{a, 0.0};
  const Point C = ap;
  const Point cp{p.alpha * a, 0.0};
  const Point bp = (1.0 - p.beta) * C;
  const Point app{(1.0 - p.gamma) * a + p.gamma * C.x, p.gamma * C.y};
  const Point m{p.xi * a + p.eta * C.x, p.eta * C.y};
  std::array<Quadrangle, 3> q;
  q[0].v = {A, cp, m, bp};
  q[0].corner = Corner::A;
  q[1].v = {B, app, m, cp};
  q[1].corner = Corner::B;
  q[2].v = {C, bp, m, app};
  q[2].corner = Corner::C;
  for (const auto& quad : q) {
    if (!is_convex(quad.v)) {
      throw Error(ErrorKind::NonConvexOutput,
                  std::string("corner ") + corner_letter(*quad.corner) + " quadrangle");
    }
  }
  return q;
}

FairSplitParams solve_fair_split(double a, double b, double c, const FairSplitOptions& opts) {
  for (double e : {a, b, c}) {
    if (!(e > 1.0 - opts.delta_q && e < 1.0 + opts.delta_q)) {
      throw Error(ErrorKind::EdgeOutOfRange, "edge length " + std::to_string(e));
    }
  }
  apex(a, b, c);  // validates the triangle
  const double t0 = FairConstants::alpha0();
  const auto res = newton3(
      [&](const Vec3& x) { return perimeter_residuals(a, b, c, x); }, Vec3{t0, t0, t0},
      opts.newton, [&](const Vec3& x) { return perimeter_jacobian(a, b, c, x); });
  FairSplitParams p;
  p.alpha = res.x[0];
  p.beta = res.x[1];
  p.gamma = res.x[2];
  std::tie(p.xi, p.eta) = xi_eta(p.alpha, p.beta, p.gamma);
  p.iterations = res.iterations;
  p.residual = res.residual;
  quad_vertices(a, b, c, p);  // convexity gate
  return p;
}

double jacobian_check(double step) {
  const double t0 = FairConstants::alpha0();
  const Residual3 f = [](const Vec3& x) { return perimeter_residuals(1.0, 1.0, 1.0, x); };
  return determinant(central_difference_jacobian(f, Vec3{t0, t0, t0}, step));
}

double reconstruction_jacobian_check(double step) {
  const auto q = FairConstants::posed_quad0();
  const Residual3 f = [&](const Vec3& x) { return reconstruction_residuals(q, x); };
  const Vec3 x0{FairConstants::rho0(), FairConstants::sigma0(), FairConstants::tau0()};
  return determinant(central_difference_jacobian(f, x0, step));
}

std::array<Quadrangle, 3> fair_split(const Triangle& t, const FairSplitOptions& opts) {
  std::array<Point, 3> v = t.v;
  if (signed_area(v) < 0.0) std::swap(v[1], v[2]);
  int k = 0;
  double best = -1.0;
  for (int e = 0; e < 3; ++e) {
    const double len = distance(v[e], v[(e + 1) % 3]);
    if (len > best || (len == best && lex_less(v[e], v[k]))) {
      best = len;
      k = e;
    }
  }
  const Point A = v[k];
  const Point B = v[(k + 1) % 3];
  const Point C = v[(k + 2) % 3];
  const double a = distance(A, B);
  const double b = distance(A, C);
  const double c = distance(B, C);
  const Point u = (1.0 / a) * (B - A);
  const FairSplitParams p = solve_fair_split(a, b, c, opts);
  auto quads = quad_vertices(a, b, c, p);
  for (auto& q : quads) {
    for (Point& x : q.v) x = rotate_out(x, A, u);
    q.source = t.id;
  }
  // The corners coincide with the input vertices up to rounding; use them exactly.
  quads[0].v[0] = A;
  quads[1].v[0] = B;
  quads[2].v[0] = C;
  return quads;
}

Vec3 reconstruction_residuals(const std::array<double, 5>& q, const Vec3& rst) {
  return recon_residuals(q, rst[0], rst[1], rst[2]);
}

Mat3 reconstruction_jacobian(const std::array<double, 5>& q, const Vec3& rst) {
  return gradient_rows(
      recon_residuals(q, Dual::var(rst[0], 0), Dual::var(rst[1], 1), Dual::var(rst[2], 2)));
}

Reconstruction reconstruct_triangle(const Quadrangle& quad, const NewtonOptions& opts) {
  std::array<Point, 4> v = quad.v;
  if (signed_area(v) < 0.0) std::reverse(v.begin(), v.end());
  const auto angles = interior_angles(Polygon{{v.begin(), v.end()}});
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int i, int j) { return angles[i] < angles[j]; });
  if (!(angles[order[1]] - angles[order[0]] > 1e-9)) {
    throw Error(ErrorKind::OutOfBasin, "smallest interior angle is not unique");
  }
  const int k = order[0];
  const Point o = v[k];
  const Point first = v[(k + 1) % 4];
  const Point u = (1.0 / distance(o, first)) * (first - o);
  const Point z = rotate_into(v[(k + 2) % 4], o, u);
  const Point x = rotate_into(v[(k + 3) % 4], o, u);

  Reconstruction out;
  out.posed = {distance(o, first), x.x, x.y, z.x, z.y};
  const auto ref = FairConstants::posed_quad0();
  for (int i = 0; i < 5; ++i) {
    if (!(std::abs(out.posed[i] - ref[i]) <= 0.1)) {
      throw Error(ErrorKind::OutOfBasin, "posed quadrangle too far from the undistorted shape");
    }
  }
  const auto q = out.posed;
  const auto res = newton3([&](const Vec3& r) { return reconstruction_residuals(q, r); },
                           Vec3{FairConstants::rho0(), FairConstants::sigma0(), FairConstants::tau0()},
                           opts, [&](const Vec3& r) { return reconstruction_jacobian(q, r); });
  out.triple = {res.x[0], res.x[1], res.x[2]};
  out.iterations = res.iterations;
  out.residual = res.residual;
  out.triangle.v = {Point{0.0, 0.0}, Point{res.x[0] * q[0], 0.0},
                    Point{res.x[1] * q[1], res.x[1] * q[2]}};
  if (quad.source) out.triangle.id = *quad.source;
  return out;
}

std::vector<Quadrangle> quadify_plane(std::span<const Triangle> tiles, double scale,
                                      const FairSplitOptions& opts) {
  std::vector<Quadrangle> out(tiles.size() * 3);
  std::vector<std::optional<Error>> failures(tiles.size());
  parallel_for(tiles.size(), [&](std::size_t i) {
    try {
      Triangle t = tiles[i];
      for (Point& p : t.v) p = scale * p;
      auto quads = fair_split(t, opts);
      for (int k = 0; k < 3; ++k) {
        for (Point& p : quads[k].v) p = (1.0 / scale) * p;
        out[3 * i + k] = quads[k];
      }
    } catch (const Error& e) {
      failures[i].emplace(e.kind(), "tile " + to_string(tiles[i].id) + ": " + e.what(),
                          tiles[i].id);
    }
  });
  for (const auto& f : failures) {
    if (f) throw *f;
  }
  return out;
}

}  // namespace fairtile
