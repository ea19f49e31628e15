#include "fairtile/strip.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fairtile/error.hpp"

namespace fairtile {

namespace {

constexpr double kDenominatorFloor = 1e-14;

void require_finite(double v, int i) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::DenominatorVanished,
                "non-finite value at column " + std::to_string(i));
  }
}

}  // namespace

StripTiling StripTiling::with_vertical_scale(double s) const {
  StripTiling out = *this;
  out.scale_ = s;
  return out;
}

StripTiling strip_tiling(double y0, int n_cols, const StripOptions& opts) {
  if (!(y0 > 0.0 && y0 < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "y0 must lie in (0,1), got " + std::to_string(y0));
  }
  if (n_cols < 1 || n_cols > opts.max_cols) {
    throw Error(ErrorKind::InvalidParameter, "n_cols out of range: " + std::to_string(n_cols));
  }
  const std::size_t n = static_cast<std::size_t>(n_cols);
  StripTiling t;
  t.n_ = n_cols;
  t.x_.resize(n + 1);
  t.y_.resize(n + 1);
  t.xi_.resize(n + 1);
  t.a_.resize(n + 1);
  t.b_.resize(n + 1);
  t.alpha_.resize(n + 1);
  t.beta_.resize(n + 1);

  t.y_[0] = y0;
  t.xi_[0] = 0.0;
  t.x_[0] = 0.0;
  double alpha = y0 / (1.0 - y0);
  double beta = -y0 / (1.0 + y0);
  for (std::size_t i = 1; i <= n + 1; ++i) {
    const int ii = static_cast<int>(i);
    t.alpha_[i - 1] = alpha;
    t.beta_[i - 1] = beta;
    t.a_[i - 1] = (2.0 * ii - 1.0) + alpha;
    t.b_[i - 1] = (2.0 * ii - 1.0) + beta;
    if (i == n + 1) break;

    // d = -4i + 3 + a_i + b_i
    const double d = 1.0 + alpha + beta;
    if (!(std::abs(d) >= kDenominatorFloor)) {
      throw Error(ErrorKind::DenominatorVanished, "at column " + std::to_string(ii));
    }
    const double yp = t.y_[i - 1];
    const double xi = t.xi_[i - 1] - (alpha - beta) * yp / d;
    const double yi = yp * ((d - 2.0) / d);
    require_finite(xi, ii);
    require_finite(yi, ii);
    t.xi_[i] = xi;
    t.y_[i] = yi;
    t.x_[i] = 2.0 * ii + xi;

    const double up = 1.0 - yi;
    const double dn = 1.0 + yi;
    if (std::abs(up) < kDenominatorFloor || std::abs(dn) < kDenominatorFloor) {
      throw Error(ErrorKind::DenominatorVanished, "at column " + std::to_string(ii + 1));
    }
    alpha += 2.0 * yi / up;
    beta -= 2.0 * yi / dn;
    require_finite(alpha, ii + 1);
    require_finite(beta, ii + 1);
  }
  return t;
}

StripTiling critical_tiling(int n_cols) {
  if (n_cols < 1) throw Error(ErrorKind::InvalidParameter, "n_cols must be positive");
  const std::size_t n = static_cast<std::size_t>(n_cols);
  const double r3 = std::sqrt(3.0);
  StripTiling t;
  t.n_ = n_cols;
  t.x_.assign(n + 1, 0.0);
  t.y_.assign(n + 1, 0.0);
  t.xi_.assign(n + 1, -0.5);
  t.y_[0] = 1.0 / r3;
  t.xi_[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) t.x_[i] = 2.0 * static_cast<double>(i) - 0.5;
  for (std::size_t i = 1; i <= n + 1; ++i) {
    const double di = static_cast<double>(i);
    t.a_.push_back(2.0 * di + (r3 - 1.0) / 2.0);
    t.b_.push_back(2.0 * di - (r3 + 1.0) / 2.0);
    t.alpha_.push_back((r3 + 1.0) / 2.0);
    t.beta_.push_back((1.0 - r3) / 2.0);
  }
  return t;
}

StripTiling undistorted_tiling(int n_cols) {
  if (n_cols < 1) throw Error(ErrorKind::InvalidParameter, "n_cols must be positive");
  const std::size_t n = static_cast<std::size_t>(n_cols);
  StripTiling t;
  t.n_ = n_cols;
  t.y_.assign(n + 1, 0.0);
  t.xi_.assign(n + 1, 0.0);
  t.alpha_.assign(n + 1, 0.0);
  t.beta_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) t.x_.push_back(2.0 * static_cast<double>(i));
  for (std::size_t i = 1; i <= n + 1; ++i) {
    t.a_.push_back(2.0 * static_cast<double>(i) - 1.0);
    t.b_.push_back(2.0 * static_cast<double>(i) - 1.0);
  }
  return t;
}

DeviationSeries deviations(const StripTiling& t) {
  const int n = t.n_cols();
  DeviationSeries d;
  d.y0 = t.y0();
  d.alpha.reserve(n + 1);
  d.beta.reserve(n + 1);
  for (int i = 1; i <= n + 1; ++i) {
    d.alpha.push_back(t.alpha(i));
    d.beta.push_back(t.beta(i));
  }
  d.xi.reserve(n + 1);
  d.y.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    d.xi.push_back(t.xi(i));
    d.y.push_back(t.y(i));
  }

  const double y0 = t.y0();
  d.h.reserve(n + 1);
  d.log_h_step.reserve(n);
  d.log_abs_y.reserve(n + 1);
  d.y_sign.reserve(n + 1);
  double h = 1.0 + 2.0 * y0 * y0 / (1.0 - y0 * y0);
  double log_y = std::log(std::abs(y0));
  int sign = y0 > 0 ? 1 : (y0 < 0 ? -1 : 0);
  d.h.push_back(h);
  d.log_abs_y.push_back(log_y);
  d.y_sign.push_back(sign);
  for (int i = 1; i <= n; ++i) {
    // y_i = -y_{i-1} (2 - h_{i-1}) / h_{i-1}, carried in log form.
    log_y += std::log1p(1.0 - h) - std::log1p(h - 1.0);
    sign = (h < 2.0) ? -sign : sign;
    // h_{i} - h_{i-1} = 4 y_i^2 / (1 - y_i^2)
    const double log_step = std::log(4.0) + 2.0 * log_y - std::log1p(-std::exp(2.0 * log_y));
    h += std::exp(log_step);
    d.log_h_step.push_back(log_step);
    d.h.push_back(h);
    d.log_abs_y.push_back(log_y);
    d.y_sign.push_back(sign);
  }
  return d;
}

bool valid_slot(int col, int slot) {
  if (slot < 1 || slot > 4) return false;
  return col != 0 || slot == 1 || slot == 4;
}

Triangle triangle_at(const StripTiling& t, int col, int slot) {
  if (!valid_slot(col, slot) || std::abs(col) > t.n_cols()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "tile (" + std::to_string(col) + "," + std::to_string(slot) + ")");
  }
  const int i = std::abs(col);
  Triangle tri;
  tri.id = TileId{0, col, slot};
  if (i == 0) {
    const Point apex = t.mid(0);
    if (slot == 1) {
      const Point r = t.top(1);
      tri.v = {apex, r, Point{-r.x, r.y}};
    } else {
      const Point r = t.bottom(1);
      tri.v = {apex, Point{-r.x, r.y}, r};
    }
    return tri;
  }
  switch (slot) {
    case 1: tri.v = {t.mid(i), t.top(i + 1), t.top(i)}; break;
    case 2: tri.v = {t.mid(i - 1), t.mid(i), t.top(i)}; break;
    case 3: tri.v = {t.mid(i - 1), t.bottom(i), t.mid(i)}; break;
    default: tri.v = {t.mid(i), t.bottom(i), t.bottom(i + 1)}; break;
  }
  if (col < 0) {
    const auto m = [](Point p) { return Point{-p.x, p.y}; };
    tri.v = {m(tri.v[0]), m(tri.v[2]), m(tri.v[1])};
  }
  return tri;
}

std::size_t strip_window_size(int max_col) {
  return max_col < 0 ? 0 : 8 * static_cast<std::size_t>(max_col) + 2;
}

std::vector<Triangle> strip_window(const StripTiling& t, int max_col) {
  std::vector<Triangle> out;
  out.reserve(strip_window_size(max_col));
  for (int col = -max_col; col <= max_col; ++col) {
    for (int slot = 1; slot <= 4; ++slot) {
      if (valid_slot(col, slot)) out.push_back(triangle_at(t, col, slot));
    }
  }
  return out;
}

}  // namespace fairtile
