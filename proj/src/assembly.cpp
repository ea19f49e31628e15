#include "fairtile/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "fairtile/congruence.hpp"
#include "fairtile/error.hpp"
#include "fairtile/verify.hpp"

namespace fairtile {

namespace {

const double kSqrt3 = std::sqrt(3.0);
constexpr double kBoundaryTol = 1e-9;
constexpr std::uint64_t kShearStream = 0x9E3779B97F4A7C15ull;

bool is_even(int k) { return k % 2 == 0; }

double mu_for_row(std::span<const double> shears, int row) {
  const int n = shear_index_for_row(row);
  if (n > static_cast<int>(shears.size())) {
    throw Error(ErrorKind::InvalidParameter,
                "row " + std::to_string(row) + " needs shear mu_" + std::to_string(n));
  }
  return shears[n - 1];
}

double distance_to_nearest(const std::vector<double>& sorted, double v) {
  double best = std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it != sorted.end()) best = std::min(best, *it - v);
  if (it != sorted.begin()) best = std::min(best, v - *std::prev(it));
  return best;
}

// Keeps the roots at which the pair really is congruent. A root of the single
// edge quadratic is only a necessary condition; away from the confirmed roots
// no shear can make the pair congruent.
template <class Confirm>
void add_confirmed(std::vector<double>& into, const ShearRootSet& s, Confirm&& confirm) {
  for (double mu : s.roots) {
    if (confirm(mu)) into.push_back(mu);
  }
}

bool sss_close(const Triangle& a, const Triangle& b, double tol) {
  return congruent(Polygon::of(a), Polygon::of(b), tol);
}

}  // namespace

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

RowRange centered_rows(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "row count must be positive");
  return {-((n - 1) / 2), n / 2};
}

int shear_index_for_row(int row) {
  if (row == 0) return 1;
  return row > 0 ? 2 * row : 2 * (-row) + 1;
}

StripTiling scale_to_equilateral(const StripTiling& t) {
  return t.with_vertical_scale(t.vertical_scale() * kSqrt3);
}

std::vector<Triangle> shear(std::span<const Triangle> tiles, double mu) {
  std::vector<Triangle> out;
  out.reserve(tiles.size());
  for (const Triangle& t : tiles) out.push_back(shear(t, mu));
  return out;
}

Point StripTransform::apply(Point p) const {
  Point q = sheared(p, mu);
  if (reflected) q.y = -q.y;
  return q + translation;
}

Triangle StripTransform::apply(const Triangle& t, int row) const {
  Triangle out;
  out.id = t.id;
  out.id.strip = row;
  if (reflected) {
    out.v = {apply(t.v[0]), apply(t.v[2]), apply(t.v[1])};
  } else {
    out.v = {apply(t.v[0]), apply(t.v[1]), apply(t.v[2])};
  }
  return out;
}

const StripTransform& PlaneTiling::transform(int row) const {
  if (row < rows.lo || row > rows.hi) {
    throw Error(ErrorKind::IndexOutOfRange, "row " + std::to_string(row));
  }
  return transforms[static_cast<std::size_t>(row - rows.lo)];
}

Triangle PlaneTiling::tile(int row, int col, int slot) const {
  return transform(row).apply(triangle_at(base, col, slot), row);
}

PlaneTiling stack_plane(const StripTiling& base, std::span<const double> shears, RowRange rows,
                        int window_cols, double epsilon) {
  if (rows.count() < 1) throw Error(ErrorKind::InvalidParameter, "empty row range");
  if (window_cols < 1 || window_cols > base.n_cols()) {
    throw Error(ErrorKind::InvalidParameter, "window_cols outside the generated strip");
  }
  PlaneTiling p;
  p.base = base;
  p.epsilon = epsilon;
  p.shears.assign(shears.begin(), shears.end());
  p.rows = rows;
  p.window_cols = window_cols;
  p.transforms.resize(static_cast<std::size_t>(rows.count()));

  // x-translation t_k with t_0 = 0; t_{k+1} - t_k = +-(mu_k - mu_{k+1}) sqrt 3,
  // sign + when row k is unreflected.
  auto step = [&](int k) {
    const double d = (mu_for_row(shears, k) - mu_for_row(shears, k + 1)) * kSqrt3;
    return is_even(k) ? d : -d;
  };
  const int lo = std::min(rows.lo, 0);
  const int hi = std::max(rows.hi, 0);
  std::vector<double> t(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (int k = 0; k < hi; ++k) t[k + 1 - lo] = t[k - lo] + step(k);
  for (int k = 0; k > lo; --k) t[k - 1 - lo] = t[k - lo] - step(k - 1);

  for (int k = rows.lo; k <= rows.hi; ++k) {
    StripTransform& tr = p.transforms[static_cast<std::size_t>(k - rows.lo)];
    tr.mu = mu_for_row(shears, k);
    tr.reflected = !is_even(k);
    tr.translation = {t[k - lo], 2.0 * k * kSqrt3};
  }

  for (int k = rows.lo; k < rows.hi; ++k) {
    const StripTransform& below = p.transform(k);
    const StripTransform& above = p.transform(k + 1);
    for (int i = 1; i <= window_cols + 1; ++i) {
      for (double s : {1.0, -1.0}) {
        const Point q = is_even(k) ? base.top(i) : base.bottom(i);
        const Point v = {s * q.x, q.y};
        const Point d = below.apply(v) - above.apply(v);
        if (!(std::abs(d.x) <= kBoundaryTol && std::abs(d.y) <= kBoundaryTol)) {
          throw Error(ErrorKind::BoundaryMismatch, "between rows " + std::to_string(k) +
                                                       " and " + std::to_string(k + 1));
        }
      }
    }
  }
  return p;
}

std::vector<Triangle> window_cols(const PlaneTiling& p, int max_col) {
  if (max_col > p.base.n_cols()) {
    throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(max_col));
  }
  std::vector<Triangle> out;
  out.reserve(static_cast<std::size_t>(p.rows.count()) * strip_window_size(max_col));
  const auto strip = strip_window(p.base, max_col);
  for (int k = p.rows.lo; k <= p.rows.hi; ++k) {
    const StripTransform& tr = p.transform(k);
    for (const Triangle& t : strip) out.push_back(tr.apply(t, k));
  }
  return out;
}

std::vector<Triangle> window(const PlaneTiling& p, double x_lo, double x_hi, RowRange rows) {
  std::vector<Triangle> out;
  if (!(x_lo <= x_hi) || rows.count() == 0) return out;
  if (rows.lo < p.rows.lo || rows.hi > p.rows.hi) {
    throw Error(ErrorKind::IndexOutOfRange, "rows outside the generated plane");
  }
  const int n = p.base.n_cols();
  for (int k = rows.lo; k <= rows.hi; ++k) {
    const StripTransform& tr = p.transform(k);
    for (int col = -n; col <= n; ++col) {
      for (int slot = 1; slot <= 4; ++slot) {
        if (!valid_slot(col, slot)) continue;
        const Triangle t = tr.apply(triangle_at(p.base, col, slot), k);
        double lo = t.v[0].x, hi = t.v[0].x;
        for (const Point& v : t.v) {
          lo = std::min(lo, v.x);
          hi = std::max(hi, v.x);
        }
        if (hi < x_lo || lo > x_hi) continue;
        if (std::abs(col) == n) {
          throw Error(ErrorKind::IndexOutOfRange, "box reaches past the generated columns");
        }
        out.push_back(t);
      }
    }
  }
  return out;
}

PlaneTiling periodic_reference(const PlaneTiling& p) {
  const StripTiling flat = scale_to_equilateral(undistorted_tiling(p.base.n_cols()));
  const std::vector<double> zeros(static_cast<std::size_t>(2 * std::max(-p.rows.lo, p.rows.hi) + 1),
                                  0.0);
  return stack_plane(flat, zeros, p.rows, p.window_cols, 0.0);
}

double strip_deviation(const StripTiling& base, int max_col) {
  const double s = base.vertical_scale();
  double worst = 0.0;
  for (int i = 0; i <= max_col; ++i) {
    worst = std::max({worst, std::abs(base.xi(i)), s * std::abs(base.y(i))});
  }
  for (int i = 1; i <= max_col + 1; ++i) {
    worst = std::max({worst, std::abs(base.alpha(i)), std::abs(base.beta(i))});
  }
  return worst;
}

double shear_radius(int n, double epsilon) {
  return std::ldexp(epsilon / (2.0 * kSqrt3), -n);
}

double certification_margin(int n, double epsilon, const ShearSelectionOptions& opts) {
  return std::max(1e-9, std::min(opts.root_margin, opts.relative_margin * shear_radius(n, epsilon)));
}

std::vector<double> select_shears(const StripTiling& base, int count, double epsilon,
                                  std::uint64_t seed, int window_cols,
                                  const ShearSelectionOptions& opts) {
  if (count < 1 || !(epsilon > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "count and epsilon must be positive");
  }
  const auto tiles = strip_window(base, window_cols);

  // Roots that do not depend on earlier shears: co-sheared pairs and equilateral images.
  std::vector<double> fixed_roots;
  std::vector<Triangle> level_tiles;  // no usable equilateral root set
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    for (std::size_t j = i + 1; j < tiles.size(); ++j) {
      try {
        add_confirmed(fixed_roots, co_shear_roots(tiles[i], tiles[j]), [&](double mu) {
          return sss_close(shear(tiles[i], mu), shear(tiles[j], mu), opts.confirm_tol);
        });
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegeneratePair) throw;
        throw Error(ErrorKind::InvalidParameter,
                    "base window contains tiles " + to_string(tiles[i].id) + " and " +
                        to_string(tiles[j].id) + " equal up to translation and half-turn");
      }
    }
    try {
      add_confirmed(fixed_roots, equilateral_shear_set(tiles[i]), [&](double mu) {
        return is_equilateral(shear(tiles[i], mu), opts.confirm_tol);
      });
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoUnequalHeights) throw;
      level_tiles.push_back(tiles[i]);
    }
  }
  std::sort(fixed_roots.begin(), fixed_roots.end());

  std::mt19937_64 rng(seed ^ kShearStream);
  std::vector<double> shears;
  std::vector<double> prior_roots;  // roots against strips already fixed
  for (int n = 1; n <= count; ++n) {
    const double r = shear_radius(n, epsilon);
    const double margin = certification_margin(n, epsilon, opts);
    bool found = false;
    for (int attempt = 0; attempt < opts.max_retries && !found; ++attempt) {
      const double mu = r * (2.0 * uniform01(rng()) - 1.0);
      if (distance_to_nearest(fixed_roots, mu) < margin) continue;
      if (distance_to_nearest(prior_roots, mu) < margin) continue;
      bool level_ok = true;
      for (const Triangle& t : level_tiles) {
        if (is_equilateral(shear(t, mu), 1e-9)) level_ok = false;
      }
      if (!level_ok) continue;
      shears.push_back(mu);
      found = true;
    }
    if (!found) {
      throw Error(ErrorKind::ExhaustedRetries, "no certified shear mu_" + std::to_string(n) +
                                                   " after " + std::to_string(opts.max_retries) +
                                                   " samples");
    }
    if (n < count) {
      const double mu = shears.back();
      for (const Triangle& fixed_src : tiles) {
        const Triangle fixed = shear(fixed_src, mu);
        for (const Triangle& t : tiles) {
          add_confirmed(prior_roots, shear_vs_fixed_roots(t, fixed), [&](double m) {
            return sss_close(shear(t, m), fixed, opts.confirm_tol);
          });
        }
      }
      std::sort(prior_roots.begin(), prior_roots.end());
    }
  }
  return shears;
}

BaseSelection select_base_strip(double epsilon, std::uint64_t seed, int window_cols,
                                const BaseSelectionOptions& opts) {
  if (!(epsilon > 0.0) || window_cols < 1) {
    throw Error(ErrorKind::InvalidParameter, "epsilon and window_cols must be positive");
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 1; attempt <= opts.max_retries; ++attempt) {
    const double y0 = opts.y0_lo + (opts.y0_hi - opts.y0_lo) * uniform01(rng());
    const StripTiling strip = strip_tiling(y0, window_cols);
    const double dev = strip_deviation(scale_to_equilateral(strip), window_cols);
    if (!(dev < epsilon)) continue;

    const auto tiles = strip_window(strip, window_cols);
    bool distinct = true;
    for (std::size_t i = 0; i < tiles.size() && distinct; ++i) {
      for (std::size_t j = i + 1; j < tiles.size() && distinct; ++j) {
        distinct = !halfturn_translate_congruent(tiles[i], tiles[j], opts.incongruence_tol);
      }
    }
    if (!distinct) continue;

    const auto estimates = check_lemma4(deviations(strip_tiling(y0, opts.estimate_terms)));
    if (!estimates.passed()) {
      throw Error(ErrorKind::InvalidParameter,
                  "deviation series for y0 = " + std::to_string(y0) + " fails " +
                      estimates.first_failure());
    }
    return BaseSelection{y0, attempt, strip, dev};
  }
  throw Error(ErrorKind::ExhaustedRetries,
              "no admissible y0 after " + std::to_string(opts.max_retries) + " samples");
}

}  // namespace fairtile
