#include "fairtile/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "fairtile/congruence.hpp"
#include "fairtile/error.hpp"
#include "fairtile/parallel.hpp"

namespace fairtile {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

struct Box {
  double x_lo, x_hi, y_lo, y_hi;
};

Box bounds(const Tile& t) {
  Box b{kInf, -kInf, kInf, -kInf};
  for (const Point& p : t.vertices) {
    b.x_lo = std::min(b.x_lo, p.x);
    b.x_hi = std::max(b.x_hi, p.x);
    b.y_lo = std::min(b.y_lo, p.y);
    b.y_hi = std::max(b.y_hi, p.y);
  }
  return b;
}

// Candidate pairs (i < j) whose bounding boxes overlap after padding by tol.
std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs(std::span<const Tile> tiles,
                                                                   double tol) {
  std::vector<Box> boxes;
  boxes.reserve(tiles.size());
  for (const Tile& t : tiles) boxes.push_back(bounds(t));
  std::vector<std::size_t> order(tiles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return boxes[a].x_lo < boxes[b].x_lo || (boxes[a].x_lo == boxes[b].x_lo && a < b);
  });
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const Box& a = boxes[order[oi]];
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const Box& b = boxes[order[oj]];
      if (b.x_lo > a.x_hi + tol) break;
      if (b.y_lo > a.y_hi + tol || a.y_lo > b.y_hi + tol) continue;
      out.emplace_back(std::min(order[oi], order[oj]), std::max(order[oi], order[oj]));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Closed containment in a convex counterclockwise polygon, within tol.
bool inside_closed(const std::vector<Point>& poly, Point p, double tol) {
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point e = poly[(k + 1) % n] - poly[k];
    if (cross(e, p - poly[k]) / norm(e) < -tol) return false;
  }
  return true;
}

double side(Point a, Point b, Point p) { return cross(b - a, p - a) / norm(b - a); }

bool proper_crossing(Point a1, Point a2, Point b1, Point b2, double tol) {
  const double o1 = side(a1, a2, b1), o2 = side(a1, a2, b2);
  const double o3 = side(b1, b2, a1), o4 = side(b1, b2, a2);
  const auto strict = [tol](double u, double v) {
    return std::abs(u) > tol && std::abs(v) > tol && (u > 0) != (v > 0);
  };
  return strict(o1, o2) && strict(o3, o4);
}

std::vector<Point> ccw(const std::vector<Point>& v) {
  if (signed_area(v) >= 0.0) return v;
  return {v.rbegin(), v.rend()};
}

bool adjacent(std::size_t i, std::size_t j, std::size_t n) {
  return (i + 1) % n == j || (j + 1) % n == i;
}

// True when the pair meets in a full edge, a single vertex, or not at all.
bool conforming_pair(const std::vector<Point>& a, const std::vector<Point>& b, double tol) {
  std::vector<int> match_a(a.size(), -1);
  std::vector<bool> matched_b(b.size(), false);
  int shared = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (distance(a[i], b[j]) <= tol) {
        if (match_a[i] >= 0 || matched_b[j]) return false;
        match_a[i] = static_cast<int>(j);
        matched_b[j] = true;
        ++shared;
      }
    }
  }
  if (shared >= 3) return false;
  if (shared == 2) {
    std::vector<std::size_t> ia, ib;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (match_a[i] >= 0) {
        ia.push_back(i);
        ib.push_back(static_cast<std::size_t>(match_a[i]));
      }
    }
    if (!adjacent(ia[0], ia[1], a.size()) || !adjacent(ib[0], ib[1], b.size())) return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (match_a[i] < 0 && inside_closed(b, a[i], tol)) return false;
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!matched_b[j] && inside_closed(a, b[j], tol)) return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t i2 = (i + 1) % a.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t j2 = (j + 1) % b.size();
      if (proper_crossing(a[i], a[i2], b[j], b[j2], tol)) return false;
    }
  }
  return true;
}

VerificationReport residual_check(std::string name, std::span<const Tile> tiles, double target,
                                  double tol, double (*measure)(const std::vector<Point>&)) {
  VerificationReport r;
  r.check_name = std::move(name);
  r.tiles_checked = tiles.size();
  r.tolerance_used = tol;
  for (const Tile& t : tiles) {
    const double res = std::abs(measure(t.vertices) - target);
    if (!(res <= r.worst_residual)) r.worst_residual = std::isnan(res) ? kInf : res;
    if (!(res <= tol)) r.add_offender({t.key, std::nullopt});
  }
  r.passed = r.worst_residual <= tol;
  r.margin = tol - r.worst_residual;
  return r;
}

double polygon_area(const std::vector<Point>& v) { return std::abs(signed_area(v)); }
double polygon_perimeter(const std::vector<Point>& v) { return perimeter(Polygon{v}); }

PlaneTiling periodic_plane(RowRange rows, int max_col) {
  const int n = std::max(1, max_col);
  const StripTiling flat = scale_to_equilateral(undistorted_tiling(n));
  const std::vector<double> zeros(
      static_cast<std::size_t>(2 * std::max({-rows.lo, rows.hi, 0}) + 1), 0.0);
  return stack_plane(flat, zeros, rows, n, 0.0);
}

}  // namespace

std::string to_string(const TileKey& key) {
  std::string s = to_string(key.id);
  if (key.corner) {
    s.pop_back();
    s += std::string(",") + corner_letter(*key.corner) + ")";
  }
  return s;
}

Tile to_tile(const Triangle& t) { return {{t.id, std::nullopt}, {t.v.begin(), t.v.end()}}; }

Tile to_tile(const Quadrangle& q) {
  return {{q.source.value_or(TileId{}), q.corner}, {q.v.begin(), q.v.end()}};
}

std::vector<Tile> to_tiles(std::span<const Triangle> ts) {
  std::vector<Tile> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(to_tile(t));
  return out;
}

std::vector<Tile> to_tiles(std::span<const Quadrangle> qs) {
  std::vector<Tile> out;
  out.reserve(qs.size());
  for (const auto& q : qs) out.push_back(to_tile(q));
  return out;
}

void VerificationReport::add_offender(Offender o) {
  if (offenders.size() < kMaxOffenders) offenders.push_back(std::move(o));
  ++offender_count;
}

VerificationReport check_equal_area(std::span<const Tile> tiles, double target, double tol) {
  return residual_check("area", tiles, target, tol, polygon_area);
}

VerificationReport check_equal_perimeter(std::span<const Tile> tiles, double target, double tol) {
  return residual_check("perimeter", tiles, target, tol, polygon_perimeter);
}

VerificationReport check_vertex_to_vertex(std::span<const Tile> tiles, double tol) {
  VerificationReport r;
  r.check_name = "vertex_to_vertex";
  r.tiles_checked = tiles.size();
  r.tolerance_used = tol;
  std::vector<std::vector<Point>> polys;
  polys.reserve(tiles.size());
  for (const Tile& t : tiles) polys.push_back(ccw(t.vertices));
  const auto pairs = overlapping_pairs(tiles, tol);
  std::vector<char> ok(pairs.size(), 1);
  parallel_for(pairs.size(), [&](std::size_t k) {
    ok[k] = conforming_pair(polys[pairs[k].first], polys[pairs[k].second], tol) ? 1 : 0;
  });
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!ok[k]) r.add_offender({tiles[pairs[k].first].key, tiles[pairs[k].second].key});
  }
  r.worst_residual = static_cast<double>(r.offender_count);
  r.passed = r.offender_count == 0;
  r.detail = std::to_string(pairs.size()) + " candidate pairs";
  return r;
}

VerificationReport check_pairwise_incongruent(std::span<const Tile> tiles, double quantum,
                                              PairSweep sweep) {
  VerificationReport r;
  r.check_name = "incongruent";
  r.tiles_checked = tiles.size();
  r.tolerance_used = quantum;
  const std::size_t n = tiles.size();
  std::vector<Signature> sigs(n);
  std::vector<std::vector<SignatureEntry>> cycles(n);
  parallel_for(n, [&](std::size_t i) {
    const Polygon p{tiles[i].vertices};
    sigs[i] = congruence_signature(p, quantum);
    cycles[i] = signature_cycle(p);
  });

  std::vector<std::pair<std::size_t, std::size_t>> equal_pairs;
  if (sweep == PairSweep::Bucketed) {
    std::map<std::vector<std::int64_t>, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < n; ++i) buckets[sigs[i].quantized].push_back(i);
    for (const auto& [key, members] : buckets) {
      for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b)
          if (sigs[members[a]] == sigs[members[b]]) equal_pairs.emplace_back(members[a], members[b]);
    }
    std::sort(equal_pairs.begin(), equal_pairs.end());
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (sigs[i] == sigs[j]) equal_pairs.emplace_back(i, j);
  }
  for (const auto& [i, j] : equal_pairs) r.add_offender({tiles[i].key, tiles[j].key});

  std::size_t equilateral = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (cycles[i].size() != 3) continue;
    const auto [lo, hi] = std::minmax({cycles[i][0].edge_length, cycles[i][1].edge_length,
                                       cycles[i][2].edge_length});
    if (hi - lo <= quantum) {
      r.add_offender({tiles[i].key, std::nullopt});
      ++equilateral;
    }
  }

  std::vector<double> row_min(n, kInf);
  parallel_for(n, [&](std::size_t i) {
    double m = kInf;
    for (std::size_t j = i + 1; j < n; ++j) m = std::min(m, signature_distance(cycles[i], cycles[j]));
    row_min[i] = m;
  });
  r.margin = n < 2 ? kInf : *std::min_element(row_min.begin(), row_min.end());
  r.worst_residual = static_cast<double>(equal_pairs.size());
  r.passed = equal_pairs.empty() && equilateral == 0 && r.margin > 0.0;
  std::ostringstream d;
  d << equal_pairs.size() << " signature collisions, " << equilateral << " equilateral tiles";
  r.detail = d.str();
  return r;
}

VerificationReport check_non_equilateral(std::span<const Tile> tiles, double tol) {
  VerificationReport r;
  r.check_name = "equilateral";
  r.tiles_checked = tiles.size();
  r.tolerance_used = tol;
  r.margin = kInf;
  for (const Tile& t : tiles) {
    if (t.vertices.size() != 3) continue;
    const auto e = signature_cycle(Polygon{t.vertices});
    const auto [lo, hi] = std::minmax({e[0].edge_length, e[1].edge_length, e[2].edge_length});
    r.margin = std::min(r.margin, hi - lo);
    if (hi - lo <= tol) r.add_offender({t.key, std::nullopt});
  }
  r.passed = r.offender_count == 0;
  return r;
}

bool check_convex(std::span<const Point> vertices) { return is_convex(vertices, 1e-12); }

bool check_convex(const Quadrangle& q) { return check_convex(std::span<const Point>(q.v)); }

VerificationReport check_convexity(std::span<const Tile> tiles) {
  VerificationReport r;
  r.check_name = "convex";
  r.tiles_checked = tiles.size();
  r.tolerance_used = 1e-12;
  r.margin = kInf;
  for (const Tile& t : tiles) {
    if (!check_convex(t.vertices)) r.add_offender({t.key, std::nullopt});
    const std::size_t n = t.vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Point e0 = t.vertices[(k + 1) % n] - t.vertices[k];
      const Point e1 = t.vertices[(k + 2) % n] - t.vertices[(k + 1) % n];
      r.margin = std::min(r.margin, cross(e0, e1));
    }
  }
  r.passed = r.offender_count == 0;
  return r;
}

VerificationReport check_shear_budget(std::span<const double> shears, double epsilon) {
  VerificationReport r;
  r.check_name = "shear_budget";
  r.tolerance_used = epsilon;
  double total = 0.0;
  for (double mu : shears) total += 2.0 * std::sqrt(3.0) * std::abs(mu);
  r.worst_residual = total;
  r.margin = epsilon - total;
  r.passed = total < epsilon;
  r.detail = std::to_string(shears.size()) + " shears";
  return r;
}

double tabulated_vertical_width(const StripTiling& t, int col, int slot) {
  const int i = std::abs(col);
  const bool even = i % 2 == 0;
  switch (slot) {
    case 1: return 1.0 - t.y(i);
    case 2: return even ? 1.0 - t.y(i - 1) : 1.0 - t.y(i);
    case 3: return even ? 1.0 + t.y(i) : 1.0 + t.y(i - 1);
    default: return 1.0 + t.y(i);
  }
}

VerificationReport check_vertical_widths(const StripTiling& t, int max_col, double tol) {
  VerificationReport r;
  r.check_name = "vertical_width";
  r.tolerance_used = tol;
  const StripTiling unit = t.with_vertical_scale(1.0);
  for (const Triangle& tri : strip_window(unit, max_col)) {
    ++r.tiles_checked;
    const double res =
        std::abs(vertical_width(tri) - tabulated_vertical_width(unit, tri.id.col, tri.id.slot));
    r.worst_residual = std::max(r.worst_residual, res);
    if (!(res <= tol)) r.add_offender({{tri.id, std::nullopt}, std::nullopt});
  }
  r.passed = r.offender_count == 0;
  return r;
}

bool DeviationReport::passed() const {
  return std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.passed; });
}

std::string DeviationReport::first_failure() const {
  for (const auto& p : parts)
    if (!p.passed) return p.check_name;
  return {};
}

DeviationReport check_lemma4(const DeviationSeries& d) {
  DeviationReport out;
  const std::size_t n = d.size();
  for (auto& p : out.parts) {
    p.tiles_checked = n;
    p.margin = kInf;
  }

  // h_i < 1 + 5 sum_{j<=i} y_j^2 < 2
  auto& bound = out.parts[0];
  bound.check_name = "lemma4.h_bound";
  double sq = 0.0;
  std::size_t first_bad = n;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = d.y[i] != 0.0 ? d.y[i] : d.y_sign[i] * std::exp(d.log_abs_y[i]);
    sq += y * y;
    const double cap = 1.0 + 5.0 * sq;
    const double m = std::min(cap - d.h[i], 2.0 - cap);
    bound.worst_residual = std::max(bound.worst_residual, d.h[i] - cap);
    bound.margin = std::min(bound.margin, m);
    if (!(m > 0.0) && first_bad == n) first_bad = i;
  }
  bound.passed = bound.margin > 0.0;

  // 1 < h_i < h_{i+1} < 2
  auto& mono = out.parts[1];
  mono.check_name = "lemma4.h_increasing";
  bool ok = true;
  double min_log_step = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    mono.margin = std::min({mono.margin, d.h[i] - 1.0, 2.0 - d.h[i]});
    if (!(d.h[i] > 1.0 && d.h[i] < 2.0)) ok = false;
    if (i + 1 < n) {
      // A finite log increment is a positive increment, even where h itself
      // no longer moves in binary64.
      const double log_step =
          i < d.log_h_step.size() ? d.log_h_step[i] : -std::numeric_limits<double>::infinity();
      if (!(d.h[i + 1] >= d.h[i]) || !std::isfinite(log_step)) ok = false;
      if (d.h[i + 1] == d.h[i]) ++out.resolution_limited_steps;
      min_log_step = std::min(min_log_step, log_step);
      mono.worst_residual = std::max(mono.worst_residual, d.h[i] - d.h[i + 1]);
    }
  }
  mono.passed = ok && mono.margin > 0.0;
  {
    std::ostringstream s;
    s << out.resolution_limited_steps << " steps below the resolution of h; smallest log increment "
      << min_log_step;
    mono.detail = s.str();
  }

  // sign(y_i) = (-1)^i and |y_i| strictly decreasing
  auto& alt = out.parts[2];
  alt.check_name = "lemma4.y_alternating";
  ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const int expect = i % 2 == 0 ? 1 : -1;
    const int fsign = d.y[i] > 0 ? 1 : (d.y[i] < 0 ? -1 : 0);
    if (d.y_sign[i] != expect || (fsign != 0 && fsign != expect)) ok = false;
    if (i + 1 < n) {
      const double drop = d.log_abs_y[i] - d.log_abs_y[i + 1];
      alt.margin = std::min(alt.margin, drop);
      // Below the normal range binary64 y loses the precision to show the decay.
      const bool float_drop = std::abs(d.y[i + 1]) < std::abs(d.y[i]) ||
                              std::abs(d.y[i + 1]) < std::numeric_limits<double>::min();
      if (!(drop > 0.0) || !float_drop) ok = false;
    }
  }
  alt.passed = ok && alt.margin > 0.0;

  // sum_{j<=i} |y_j| < 4
  auto& sum = out.parts[3];
  sum.check_name = "lemma4.y_sum";
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(d.y[i]);
  sum.worst_residual = s;
  sum.margin = 4.0 - s;
  sum.passed = s < 4.0;

  if (first_bad < n) bound.detail = "first violation at i = " + std::to_string(first_bad);
  return out;
}

VerificationReport ClosenessReport::as_report() const {
  VerificationReport r;
  r.check_name = "closeness";
  r.passed = passed;
  r.worst_residual = max_coord_deviation;
  r.margin = 2.0 * epsilon_target - max_coord_deviation;
  r.tolerance_used = 2.0 * epsilon_target;
  r.tiles_checked = tiles_checked;
  if (!passed && worst_tile) r.add_offender({*worst_tile, std::nullopt});
  std::ostringstream d;
  d.precision(6);
  d << "reference: " << reference;
  if (has_decomposition) d << "; strip deviation " << strip_deviation << ", shear drift " << shear_drift;
  r.detail = d.str();
  return r;
}

ClosenessReport check_closeness(std::span<const Tile> tiles, double epsilon) {
  ClosenessReport r;
  r.epsilon_target = epsilon;
  r.tiles_checked = tiles.size();
  if (tiles.empty()) {
    r.passed = true;
    return r;
  }
  RowRange rows{tiles[0].key.id.strip, tiles[0].key.id.strip};
  int max_col = 1;
  for (const Tile& t : tiles) {
    rows.lo = std::min(rows.lo, t.key.id.strip);
    rows.hi = std::max(rows.hi, t.key.id.strip);
    max_col = std::max(max_col, std::abs(t.key.id.col));
  }
  const PlaneTiling ref = periodic_plane(rows, max_col);
  for (const Tile& t : tiles) {
    const TileId& id = t.key.id;
    const Triangle p = ref.tile(id.strip, id.col, id.slot);
    if (t.vertices.size() != 3) {
      throw Error(ErrorKind::InvalidParameter, "closeness is defined for triangle tiles");
    }
    for (std::size_t k = 0; k < 3; ++k) {
      const double dev = std::max(std::abs(t.vertices[k].x - p.v[k].x),
                                  std::abs(t.vertices[k].y - p.v[k].y));
      if (dev > r.max_coord_deviation) {
        r.max_coord_deviation = dev;
        r.worst_tile = t.key;
      }
    }
  }
  r.passed = r.max_coord_deviation < 2.0 * epsilon;
  return r;
}

ClosenessReport check_closeness(const PlaneTiling& p, std::span<const Triangle> window,
                                double epsilon) {
  const auto tiles = to_tiles(window);
  ClosenessReport r = check_closeness(tiles, epsilon);
  int max_col = 0;
  for (const Triangle& t : window) max_col = std::max(max_col, std::abs(t.id.col));
  r.has_decomposition = true;
  r.strip_deviation = strip_deviation(p.base, std::min(max_col, p.base.n_cols()));
  for (int k = p.rows.lo; k <= p.rows.hi; ++k) {
    r.shear_drift += 2.0 * std::sqrt(3.0) * std::abs(p.transform(k).mu);
  }
  return r;
}

}  // namespace fairtile
