#include "fairtile/newton.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "fairtile/error.hpp"

namespace fairtile {

namespace {

Eigen::Matrix3d to_eigen(const Mat3& m) {
  Eigen::Matrix3d e;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e(r, c) = m[r][c];
  return e;
}

[[noreturn]] void no_convergence(int iterations, double residual) {
  std::ostringstream msg;
  msg << "after " << iterations << " iterations, residual " << residual;
  throw Error(ErrorKind::NoConvergence, msg.str());
}

}  // namespace

double max_abs(const Vec3& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

double determinant(const Mat3& m) { return to_eigen(m).determinant(); }

Mat3 central_difference_jacobian(const Residual3& f, const Vec3& x, double step) {
  Mat3 j{};
  for (int c = 0; c < 3; ++c) {
    Vec3 hi = x;
    Vec3 lo = x;
    hi[c] += step;
    lo[c] -= step;
    const Vec3 fh = f(hi);
    const Vec3 fl = f(lo);
    for (int r = 0; r < 3; ++r) j[r][c] = (fh[r] - fl[r]) / (2.0 * step);
  }
  return j;
}

NewtonResult newton3(const Residual3& f, const Vec3& x0, const NewtonOptions& opts,
                     const Jacobian3& jac) {
  NewtonResult res;
  res.x = x0;
  Vec3 r = f(res.x);
  res.residual = max_abs(r);
  if (!std::isfinite(res.residual)) no_convergence(0, res.residual);

  while (res.residual > opts.tol) {
    if (res.iterations >= opts.max_iter) no_convergence(res.iterations, res.residual);

    const Eigen::Matrix3d j =
        to_eigen(jac ? jac(res.x) : central_difference_jacobian(f, res.x, opts.fd_step));
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(j);
    if (!j.allFinite() || lu.determinant() == 0.0 || !lu.isInvertible()) {
      throw Error(ErrorKind::SingularJacobian, "determinant is zero");
    }
    const double cond = j.lpNorm<Eigen::Infinity>() * lu.inverse().lpNorm<Eigen::Infinity>();
    if (!(cond <= opts.max_condition)) {
      std::ostringstream msg;
      msg << "condition number " << cond;
      throw Error(ErrorKind::SingularJacobian, msg.str());
    }
    const Eigen::Vector3d rhs(r[0], r[1], r[2]);
    const Eigen::Vector3d step = -lu.solve(rhs);

    double lambda = 1.0;
    Vec3 trial{};
    Vec3 rt{};
    bool accepted = false;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      for (int k = 0; k < 3; ++k) trial[k] = res.x[k] + lambda * step[k];
      rt = f(trial);
      if (max_abs(rt) < res.residual) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    ++res.iterations;
    if (!accepted || lambda * step.lpNorm<Eigen::Infinity>() < opts.step_floor) {
      no_convergence(res.iterations, res.residual);
    }
    res.x = trial;
    r = rt;
    res.residual = max_abs(r);
  }
  return res;
}

}  // namespace fairtile
