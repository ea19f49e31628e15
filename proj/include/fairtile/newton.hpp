#pragma once

#include <array>
#include <functional>

namespace fairtile {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;  // J[row][col] = dF_row / dx_col
using Residual3 = std::function<Vec3(const Vec3&)>;
using Jacobian3 = std::function<Mat3(const Vec3&)>;

struct NewtonOptions {
  double tol = 1e-11;
  int max_iter = 50;
  double fd_step = 1e-7;
  int max_halvings = 20;
  double step_floor = 1e-15;
  double max_condition = 1e12;
};

struct NewtonResult {
  Vec3 x{};
  int iterations = 0;
  double residual = 0.0;  // infinity norm at x
};

// Damped Newton iteration on a 3x3 system. Uses jac when given, otherwise
// central differences. Throws NoConvergence or SingularJacobian.
NewtonResult newton3(const Residual3& f, const Vec3& x0, const NewtonOptions& opts = {},
                     const Jacobian3& jac = {});

Mat3 central_difference_jacobian(const Residual3& f, const Vec3& x, double step);

double determinant(const Mat3& m);

double max_abs(const Vec3& v);

}  // namespace fairtile
