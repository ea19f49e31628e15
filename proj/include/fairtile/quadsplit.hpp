#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "fairtile/geometry.hpp"
#include "fairtile/newton.hpp"

namespace fairtile {

struct FairConstants {
  static double p0();      // 1 + sqrt(2) - sqrt(6)/3
  static double alpha0();  // 1 - sqrt(3)/3, also beta0 and gamma0
  static constexpr double xi0 = 1.0 / 3.0;
  static double rho0();    // (3 + sqrt(3))/2
  static double sigma0();  // sqrt(3)
  static double tau0();    // 1 - sqrt(3)/3
  // Corner quadrangle of the unit equilateral split, posed with its
  // smallest angle at the origin: (a_hat, x_hat, y_hat, z_hat, w_hat).
  static std::array<double, 5> posed_quad0();
};

struct FairSplitParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double xi = 0.0;
  double eta = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

struct FairSplitOptions {
  double delta_q = 0.02;
  NewtonOptions newton{};
};

// Apex (x, y) of the triangle with base (0,0)-(a,0), left side b, right side c.
Point apex(double a, double b, double c);

// Interior point weights giving three equal areas.
std::pair<double, double> xi_eta(double alpha, double beta, double gamma);

// Perimeters of the three corner quadrangles minus p0, ordered (A, C, B) corner.
Vec3 perimeter_residuals(double a, double b, double c, const Vec3& abg);
Mat3 perimeter_jacobian(double a, double b, double c, const Vec3& abg);

// Corner quadrangles at A=(0,0), B=(a,0), C=apex, all sharing the interior
// vertex M. Throws NonConvexOutput.
std::array<Quadrangle, 3> quad_vertices(double a, double b, double c, const FairSplitParams& p);

FairSplitParams solve_fair_split(double a, double b, double c, const FairSplitOptions& opts = {});

// Determinant of the finite-difference Jacobian at the undistorted point.
double jacobian_check(double step = 1e-6);
double reconstruction_jacobian_check(double step = 1e-6);

// Splits a triangle with edges in (1 - delta_q, 1 + delta_q). The longest edge
// (ties: lexicographically smallest start vertex) is posed as the base.
std::array<Quadrangle, 3> fair_split(const Triangle& t, const FairSplitOptions& opts = {});

struct ReconstructionTriple {
  double rho = 0.0;
  double sigma = 0.0;
  double tau = 0.0;
};

struct Reconstruction {
  Triangle triangle;  // in the posed frame of the quadrangle
  ReconstructionTriple triple;
  std::array<double, 5> posed{};  // a_hat, x_hat, y_hat, z_hat, w_hat
  int iterations = 0;
  double residual = 0.0;
};

// Residuals (area1 - area2, area1 - area3, perimeter2 - p0) for the posed
// quadrangle q = (a_hat, x_hat, y_hat, z_hat, w_hat) and unknowns (rho, sigma, tau).
Vec3 reconstruction_residuals(const std::array<double, 5>& q, const Vec3& rst);
Mat3 reconstruction_jacobian(const std::array<double, 5>& q, const Vec3& rst);

// Recovers the dissected triangle from one corner quadrangle. Throws
// OutOfBasin or NoConvergence.
Reconstruction reconstruct_triangle(const Quadrangle& q, const NewtonOptions& opts = {});

// Scales every triangle by `scale`, splits, and scales the pieces back.
// Output holds three quadrangles per input triangle in input order.
std::vector<Quadrangle> quadify_plane(std::span<const Triangle> tiles, double scale = 0.5,
                                      const FairSplitOptions& opts = {});

}  // namespace fairtile
