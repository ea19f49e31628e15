#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fairtile/geometry.hpp"
#include "fairtile/strip.hpp"

namespace fairtile {

// Inclusive range of strip rows.
struct RowRange {
  int lo = 0;
  int hi = 0;
  int count() const { return hi >= lo ? hi - lo + 1 : 0; }
};

// Rows -floor((n-1)/2) .. ceil((n-1)/2); these use exactly the shears mu_1..mu_n.
RowRange centered_rows(int n);

// 1-based shear index of a row: 0 -> 1, k > 0 -> 2k, k < 0 -> 2|k| + 1.
int shear_index_for_row(int row);

// Vertical scaling (x, y) -> (x, sqrt(3) y).
StripTiling scale_to_equilateral(const StripTiling& t);

std::vector<Triangle> shear(std::span<const Triangle> tiles, double mu);

struct StripTransform {
  double mu = 0.0;
  bool reflected = false;
  Point translation{};

  // Shear, then reflect through the x-axis if requested, then translate.
  Point apply(Point p) const;
  Triangle apply(const Triangle& t, int row) const;
};

struct PlaneTiling {
  StripTiling base;  // scaled
  double epsilon = 0.0;
  std::vector<double> shears;  // mu_1, mu_2, ...
  RowRange rows;
  int window_cols = 0;
  std::vector<StripTransform> transforms;  // indexed by row - rows.lo

  const StripTransform& transform(int row) const;
  Triangle tile(int row, int col, int slot) const;
};

// Stacks sheared copies of the base into rows; adjacent rows are translated so
// their shared boundary vertices coincide. Throws BoundaryMismatch(row) if they
// differ by more than 1e-9 on the window.
PlaneTiling stack_plane(const StripTiling& base, std::span<const double> shears, RowRange rows,
                        int window_cols, double epsilon = 0.0);

// Tiles with |col| <= max_col for every row, ordered (row, col, slot).
std::vector<Triangle> window_cols(const PlaneTiling& p, int max_col);

// Tiles whose bounding box meets [x_lo, x_hi] in the given rows, ordered (row, col, slot).
std::vector<Triangle> window(const PlaneTiling& p, double x_lo, double x_hi, RowRange rows);

// Undistorted plane (all shears zero) on the same rows and columns as p.
PlaneTiling periodic_reference(const PlaneTiling& p);

// Per-coordinate deviation of the scaled strip from the undistorted one on |col| <= max_col.
double strip_deviation(const StripTiling& base, int max_col);

struct ShearSelectionOptions {
  int max_retries = 1000;
  double root_margin = 1e-6;
  double relative_margin = 1e-2;  // margin never exceeds this fraction of the sampling radius
  double confirm_tol = 1e-6;      // a root counts as bad if the pair is this close to congruent there
};

// Samples mu_n uniformly from (-r_n, r_n), r_n = 2^-n eps / (2 sqrt 3), and keeps
// it only if it stays clear of every bad shear induced by the window: roots of
// the edge-length quadratics at which the two triangles (or the triangle and
// an equilateral one) are congruent within confirm_tol. Throws ExhaustedRetries.
std::vector<double> select_shears(const StripTiling& base, int count, double epsilon,
                                  std::uint64_t seed, int window_cols,
                                  const ShearSelectionOptions& opts = {});

double shear_radius(int n, double epsilon);
double certification_margin(int n, double epsilon, const ShearSelectionOptions& opts);

struct BaseSelectionOptions {
  double y0_lo = 0.001;
  double y0_hi = 0.01;
  int max_retries = 1000;
  int estimate_terms = 100'000;
  double incongruence_tol = 1e-9;
};

struct BaseSelection {
  double y0 = 0.0;
  int attempts = 0;
  StripTiling strip;  // unscaled, window_cols columns
  double max_deviation = 0.0;
};

// Samples y0 and keeps the first value whose scaled strip stays within epsilon
// of the undistorted strip on the window and has no two window tiles equal up
// to translation and half-turn. Throws ExhaustedRetries, or InvalidParameter
// if the deviation series fails its monotonicity checks.
BaseSelection select_base_strip(double epsilon, std::uint64_t seed, int window_cols,
                                const BaseSelectionOptions& opts = {});

// Uniform double in [0, 1) from 53 random bits.
double uniform01(std::uint64_t bits);

}  // namespace fairtile
