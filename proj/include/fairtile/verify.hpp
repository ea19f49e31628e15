#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairtile/assembly.hpp"
#include "fairtile/geometry.hpp"
#include "fairtile/strip.hpp"

namespace fairtile {

struct TileKey {
  TileId id;
  std::optional<Corner> corner;
  auto operator<=>(const TileKey&) const = default;
};

std::string to_string(const TileKey& key);

struct Tile {
  TileKey key;
  std::vector<Point> vertices;
};

Tile to_tile(const Triangle& t);
Tile to_tile(const Quadrangle& q);
std::vector<Tile> to_tiles(std::span<const Triangle> ts);
std::vector<Tile> to_tiles(std::span<const Quadrangle> qs);

struct Offender {
  TileKey first;
  std::optional<TileKey> second;
};

struct VerificationReport {
  static constexpr std::size_t kMaxOffenders = 10;

  std::string check_name;
  bool passed = false;
  double worst_residual = 0.0;
  double margin = 0.0;
  std::vector<Offender> offenders;  // first kMaxOffenders only
  std::size_t offender_count = 0;
  std::size_t tiles_checked = 0;
  double tolerance_used = 0.0;
  std::string detail;

  void add_offender(Offender o);
};

VerificationReport check_equal_area(std::span<const Tile> tiles, double target, double tol);
VerificationReport check_equal_perimeter(std::span<const Tile> tiles, double target, double tol);

// Every pair of tiles must meet in a full common edge, a common vertex, or not at all.
VerificationReport check_vertex_to_vertex(std::span<const Tile> tiles, double tol);

enum class PairSweep { Bucketed, AllPairs };

// Fails on any two tiles with equal quantized signatures and on any
// equilateral triangle; the smallest raw signature distance is the margin.
VerificationReport check_pairwise_incongruent(std::span<const Tile> tiles, double quantum,
                                              PairSweep sweep = PairSweep::Bucketed);

VerificationReport check_non_equilateral(std::span<const Tile> tiles, double tol);

bool check_convex(const Quadrangle& q);
bool check_convex(std::span<const Point> vertices);
VerificationReport check_convexity(std::span<const Tile> tiles);

VerificationReport check_shear_budget(std::span<const double> shears, double epsilon);

// Vertical width of every strip tile with |col| <= max_col against the
// parity table in y_{|i|} and y_{|i|-1}.
VerificationReport check_vertical_widths(const StripTiling& t, int max_col, double tol = 1e-12);
double tabulated_vertical_width(const StripTiling& t, int col, int slot);

struct DeviationReport {
  // Bounds on h, monotonicity of h, alternation and decay of y, bounded sum of |y|.
  std::array<VerificationReport, 4> parts;
  std::size_t resolution_limited_steps = 0;  // steps where h did not change in binary64

  bool passed() const;
  std::string first_failure() const;
};

DeviationReport check_lemma4(const DeviationSeries& d);

struct ClosenessReport {
  double epsilon_target = 0.0;
  double max_coord_deviation = 0.0;
  std::string reference = "periodic equilateral tiling, edge 2";
  double strip_deviation = 0.0;
  double shear_drift = 0.0;
  bool has_decomposition = false;  // strip_deviation and shear_drift filled in
  std::optional<TileKey> worst_tile;
  std::size_t tiles_checked = 0;
  bool passed = false;

  VerificationReport as_report() const;
};

// Matches each tile to its periodic counterpart by TileId; passes iff the
// largest per-coordinate deviation is below 2 epsilon.
ClosenessReport check_closeness(const PlaneTiling& p, std::span<const Triangle> window,
                                double epsilon);
ClosenessReport check_closeness(std::span<const Tile> tiles, double epsilon);

}  // namespace fairtile
