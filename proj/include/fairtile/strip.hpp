#pragma once

#include <cstddef>
#include <vector>

#include "fairtile/geometry.hpp"

namespace fairtile {

struct StripOptions {
  int max_cols = 10'000'000;
};

// Distorted tiling of R x [-1, 1] (or R x [-s, s] after vertical scaling).
// Sequences are indexed by column: x, y for i = 0..n; a, b for i = 1..n+1.
// Deviations alpha_i = a_i - (2i-1), beta_i = b_i - (2i-1), xi_i = x_i - 2i are
// stored alongside because they are what the recursion actually advances.
class StripTiling {
 public:
  double y0() const { return y_[0]; }
  int n_cols() const { return n_; }
  double vertical_scale() const { return scale_; }

  double x(int i) const { return x_.at(i); }
  double y(int i) const { return y_.at(i); }
  double a(int i) const { return a_.at(i - 1); }
  double b(int i) const { return b_.at(i - 1); }
  double alpha(int i) const { return alpha_.at(i - 1); }
  double beta(int i) const { return beta_.at(i - 1); }
  double xi(int i) const { return xi_.at(i); }

  // Vertex positions in the (possibly scaled) plane.
  Point mid(int i) const { return {x(i), scale_ * y(i)}; }
  Point top(int i) const { return {a(i), scale_}; }
  Point bottom(int i) const { return {b(i), -scale_}; }

  StripTiling with_vertical_scale(double s) const;

 private:
  friend StripTiling strip_tiling(double, int, const StripOptions&);
  friend StripTiling critical_tiling(int);
  friend StripTiling undistorted_tiling(int);

  int n_ = 0;
  double scale_ = 1.0;
  std::vector<double> x_, y_, a_, b_, alpha_, beta_, xi_;
};

// Builds columns 0..n_cols by the deviation-form recursion. Throws
// InvalidParameter for y0 outside (0,1) and DenominatorVanished(i) when a step
// denominator collapses.
StripTiling strip_tiling(double y0, int n_cols, const StripOptions& opts = {});

// The y0 = 1/sqrt(3) tiling written out in closed form.
StripTiling critical_tiling(int n_cols);

// The y0 -> 0 limit: a_i = b_i = 2i-1, x_i = 2i, y_i = 0.
StripTiling undistorted_tiling(int n_cols);

// Deviation series for i = 0..n. alpha[k] and beta[k] hold alpha_{k+1} and
// beta_{k+1}; h[i] = 1 + alpha_{i+1} + beta_{i+1} is advanced by its own
// recursion. For small y0, y drops below the binary64 range well before 1e5
// terms and h stops changing at its own resolution, so log|y|, the sign of y
// and the logarithm of each h increment are carried as well.
struct DeviationSeries {
  double y0 = 0.0;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> xi;
  std::vector<double> h;
  std::vector<double> log_h_step;  // log(h[i+1] - h[i]) in exact arithmetic
  std::vector<double> y;
  std::vector<double> log_abs_y;
  std::vector<int> y_sign;

  std::size_t size() const { return y.size(); }
};

DeviationSeries deviations(const StripTiling& t);

bool valid_slot(int col, int slot);

// T_i^j of the base strip (strip index 0); negative columns are the mirror
// image through x = 0. Throws IndexOutOfRange.
Triangle triangle_at(const StripTiling& t, int col, int slot);

// All tiles with |col| <= max_col, ordered by (col, slot).
std::vector<Triangle> strip_window(const StripTiling& t, int max_col);

// Tile count of strip_window.
std::size_t strip_window_size(int max_col);

}  // namespace fairtile
