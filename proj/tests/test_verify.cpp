#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fairtile/assembly.hpp"
#include "fairtile/congruence.hpp"
#include "fairtile/quadsplit.hpp"
#include "fairtile/strip.hpp"
#include "fairtile/verify.hpp"

using namespace fairtile;

namespace {

const double kS3 = std::sqrt(3.0);

struct Window {
  PlaneTiling plane;
  std::vector<Triangle> triangles;
  std::vector<Tile> tiles;
};

// A small certified plane shared by several tests.
const Window& certified() {
  static const Window w = [] {
    Window out;
    const double eps = 0.005;
    const auto sel = select_base_strip(eps, 42, 4);
    const auto base = scale_to_equilateral(sel.strip);
    const auto mus = select_shears(base, 4, eps, 42, 4);
    out.plane = stack_plane(base, mus, centered_rows(4), 4, eps);
    out.triangles = window_cols(out.plane, 4);
    out.tiles = to_tiles(std::span<const Triangle>(out.triangles));
    return out;
  }();
  return w;
}

bool names(const VerificationReport& r, const TileKey& key) {
  for (const auto& o : r.offenders) {
    if (o.first == key || (o.second && *o.second == key)) return true;
  }
  return false;
}

Tile make_tile(std::vector<Point> v, TileId id = {}) {
  Tile t;
  t.key.id = id;
  t.vertices = std::move(v);
  return t;
}

}  // namespace

TEST(Verify, AreaOnStrips) {
  const auto t = strip_tiling(0.007, 50);
  const auto tris = strip_window(t, 50);
  const auto plain = to_tiles(std::span<const Triangle>(tris));
  auto r = check_equal_area(plain, 1.0, 1e-10);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.check_name, "area");
  EXPECT_EQ(r.tiles_checked, tris.size());
  const auto scaled_tris = strip_window(scale_to_equilateral(t), 50);
  EXPECT_TRUE(check_equal_area(to_tiles(std::span<const Triangle>(scaled_tris)), kS3, 1e-10).passed);
}

TEST(Verify, AreaFaultNamesTile) {
  auto tiles = certified().tiles;
  auto& victim = tiles[7];
  victim.vertices[1].x += 1e-3;
  const auto r = check_equal_area(tiles, kS3, 1e-10);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.offender_count, 1u);
  EXPECT_TRUE(names(r, victim.key));
  EXPECT_GT(r.worst_residual, 1e-4);
}

TEST(Verify, Perimeter) {
  EXPECT_FALSE(check_equal_perimeter(certified().tiles, 6.0, 1e-9).passed);
  const std::vector<Tile> one = {certified().tiles[0]};
  const double p = perimeter(Polygon{one[0].vertices});
  EXPECT_TRUE(check_equal_perimeter(one, p, 1e-12).passed);

  const auto quads = quadify_plane(std::span<const Triangle>(certified().triangles).first(30));
  auto qt = to_tiles(std::span<const Quadrangle>(quads));
  EXPECT_TRUE(check_equal_perimeter(qt, 2 * FairConstants::p0(), 1e-9).passed);
  qt[4].vertices[2].y += 1e-3;
  const auto r = check_equal_perimeter(qt, 2 * FairConstants::p0(), 1e-9);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(names(r, qt[4].key));
}

TEST(Verify, VertexToVertex) {
  const auto r = check_vertex_to_vertex(certified().tiles, 1e-9);
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_EQ(r.check_name, "vertex_to_vertex");

  const std::vector<Tile> apart = {make_tile({{0, 0}, {1, 0}, {0, 1}}, {0, 0, 1}),
                                   make_tile({{5, 5}, {6, 5}, {5, 6}}, {0, 1, 1})};
  EXPECT_TRUE(check_vertex_to_vertex(apart, 1e-9).passed);

  // a vertex resting on the middle of a neighbour's edge
  const std::vector<Tile> hanging = {make_tile({{0, 0}, {2, 0}, {1, 1}}, {0, 0, 1}),
                                     make_tile({{0, 0}, {1, -1}, {1, 0}}, {0, 1, 1})};
  EXPECT_FALSE(check_vertex_to_vertex(hanging, 1e-9).passed);

  // overlapping tiles
  const std::vector<Tile> overlap = {make_tile({{0, 0}, {2, 0}, {1, 1}}, {0, 0, 1}),
                                     make_tile({{0.5, 0.2}, {2.5, 0.2}, {1.5, 1.2}}, {0, 1, 1})};
  EXPECT_FALSE(check_vertex_to_vertex(overlap, 1e-9).passed);

  auto tiles = certified().tiles;
  tiles[20].vertices[0].x += 1e-3;
  const auto bad = check_vertex_to_vertex(tiles, 1e-9);
  EXPECT_FALSE(bad.passed);
  EXPECT_TRUE(names(bad, tiles[20].key));
}

TEST(Verify, QuadTilingIsNotVertexToVertex) {
  const auto quads = quadify_plane(certified().triangles);
  EXPECT_FALSE(check_vertex_to_vertex(to_tiles(std::span<const Quadrangle>(quads)), 1e-9).passed);
}

TEST(Verify, Incongruence) {
  const auto r = check_pairwise_incongruent(certified().tiles, 1e-9);
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_GT(r.margin, 0.0);
  EXPECT_EQ(r.check_name, "incongruent");

  const auto flat = scale_to_equilateral(undistorted_tiling(4));
  const auto periodic = strip_window(flat, 3);
  const auto p = check_pairwise_incongruent(to_tiles(std::span<const Triangle>(periodic)), 1e-9);
  EXPECT_FALSE(p.passed);
  EXPECT_EQ(p.margin, 0.0);

  // a translated copy of one tile placed over another
  auto tiles = certified().tiles;
  auto copy = tiles[3].vertices;
  for (auto& v : copy) v = v + Point{0.25, -4.0};
  tiles[11].vertices = copy;
  const auto bad = check_pairwise_incongruent(tiles, 1e-9);
  EXPECT_FALSE(bad.passed);
  EXPECT_TRUE(names(bad, tiles[11].key));
  EXPECT_TRUE(names(bad, tiles[3].key));
}

TEST(Verify, IncongruenceQuads) {
  const auto quads = quadify_plane(certified().triangles);
  const auto r = check_pairwise_incongruent(to_tiles(std::span<const Quadrangle>(quads)), 1e-9);
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_GT(r.margin, 0.0);
}

TEST(Verify, BucketedMatchesAllPairs) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::size_t> pick(0, 499);
  const auto base = scale_to_equilateral(strip_tiling(0.0041, 40));
  const auto tris = strip_window(base, 31);  // 250 tiles
  const auto flat = strip_window(scale_to_equilateral(undistorted_tiling(40)), 31);
  std::vector<Tile> tiles = to_tiles(std::span<const Triangle>(tris));
  for (auto t : to_tiles(std::span<const Triangle>(flat))) {
    t.key.id.strip = 1;
    tiles.push_back(t);
  }
  ASSERT_EQ(tiles.size(), 500u);
  for (int round = 0; round < 4; ++round) {
    auto sample = tiles;
    if (round > 0) {
      // plant a few exact congruences
      for (int k = 0; k < round; ++k) {
        const auto src = pick(rng) % 250, dst = pick(rng) % 250;
        if (src == dst) continue;
        auto v = sample[src].vertices;
        for (auto& p : v) p = Point{-p.x, -p.y} + Point{100.0, 0.0};
        sample[dst].vertices = v;
      }
    }
    std::vector<Tile> first(sample.begin(), sample.begin() + (round == 0 ? 250 : 500));
    const auto b = check_pairwise_incongruent(first, 1e-9, PairSweep::Bucketed);
    const auto a = check_pairwise_incongruent(first, 1e-9, PairSweep::AllPairs);
    EXPECT_EQ(a.passed, b.passed);
    EXPECT_EQ(a.offender_count, b.offender_count);
    EXPECT_EQ(a.margin, b.margin);
  }
}

TEST(Verify, NonEquilateral) {
  EXPECT_TRUE(check_non_equilateral(certified().tiles, 1e-9).passed);
  auto tiles = certified().tiles;
  tiles[5].vertices = {{0, 0}, {2, 0}, {1, kS3}};
  const auto r = check_non_equilateral(tiles, 1e-9);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(names(r, tiles[5].key));
  EXPECT_EQ(r.check_name, "equilateral");
}

TEST(Verify, Convexity) {
  Quadrangle sq;
  sq.v = {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}};
  EXPECT_TRUE(check_convex(sq));
  Quadrangle dart;
  dart.v = {Point{0, 0}, Point{2, 0}, Point{0.6, 0.5}, Point{0, 2}};
  EXPECT_FALSE(check_convex(dart));
  const auto quads = quadify_plane(certified().triangles);
  auto qt = to_tiles(std::span<const Quadrangle>(quads));
  EXPECT_TRUE(check_convexity(qt).passed);
  qt[9].vertices[2] = 0.5 * (qt[9].vertices[1] + qt[9].vertices[3]) +
                      0.2 * (qt[9].vertices[0] - 0.5 * (qt[9].vertices[1] + qt[9].vertices[3]));
  qt[9].vertices[2] = qt[9].vertices[0] + 0.3 * (qt[9].vertices[2] - qt[9].vertices[0]);
  const auto r = check_convexity(qt);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(names(r, qt[9].key));
}

TEST(Verify, ShearBudget) {
  const std::vector<double> ok = {1e-4, -2e-4, 5e-5};
  EXPECT_TRUE(check_shear_budget(ok, 0.005).passed);
  const std::vector<double> big = {1e-3, -1e-3};
  const auto r = check_shear_budget(big, 0.005);
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.worst_residual, 4 * kS3 * 1e-3, 1e-15);
}

TEST(Verify, VerticalWidthTable) {
  for (double y0 : {0.001, 0.004, 0.01}) {
    const auto t = strip_tiling(y0, 1000);
    const auto r = check_vertical_widths(t, 1000, 1e-12);
    EXPECT_TRUE(r.passed) << y0 << " " << r.detail;
    for (int i : {1, 2, 17, 500, 999}) {
      for (int j = 1; j <= 4; ++j) {
        EXPECT_NEAR(vertical_width(triangle_at(t, i, j)), tabulated_vertical_width(t, i, j), 1e-12);
        EXPECT_NEAR(vertical_width(triangle_at(t, -i, j)), tabulated_vertical_width(t, -i, j),
                    1e-12);
      }
    }
  }
}

TEST(Verify, DeviationEstimates) {
  for (double y0 : {0.001, 0.005, 0.01}) {
    const auto rep = check_lemma4(deviations(strip_tiling(y0, 100'000)));
    EXPECT_TRUE(rep.passed()) << y0 << " " << rep.first_failure();
    for (const auto& p : rep.parts) EXPECT_GT(p.margin, 0.0) << p.check_name;
  }
  const auto fig2 = check_lemma4(deviations(strip_tiling(0.2, 6)));
  EXPECT_TRUE(fig2.parts[2].passed);
  EXPECT_EQ(fig2.parts[2].check_name, "lemma4.y_alternating");

  auto d = deviations(strip_tiling(0.01, 100));
  d.h[10] = d.h[9] - 1e-6;
  const auto bad = check_lemma4(d);
  EXPECT_FALSE(bad.passed());
  EXPECT_FALSE(bad.parts[1].passed);
  EXPECT_EQ(bad.parts[1].check_name, "lemma4.h_increasing");

  auto e = deviations(strip_tiling(0.01, 100));
  e.y_sign[4] = -1;
  EXPECT_FALSE(check_lemma4(e).parts[2].passed);
}

TEST(Verify, Closeness) {
  const auto& w = certified();
  const auto rep = check_closeness(w.plane, w.triangles, 0.005);
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(rep.has_decomposition);
  EXPECT_LT(rep.max_coord_deviation, 0.01);
  EXPECT_LT(rep.strip_deviation, 0.005);
  EXPECT_LT(rep.shear_drift, 0.005);

  const auto flat = scale_to_equilateral(undistorted_tiling(4));
  const std::vector<double> zeros(5, 0.0);
  const auto p = stack_plane(flat, zeros, centered_rows(3), 3);
  const auto z = check_closeness(p, window_cols(p, 3), 0.005);
  EXPECT_EQ(z.max_coord_deviation, 0.0);

  // document-level variant rebuilds the reference from the ids
  const auto doc_rep = check_closeness(w.tiles, 0.005);
  EXPECT_TRUE(doc_rep.passed);
  EXPECT_NEAR(doc_rep.max_coord_deviation, rep.max_coord_deviation, 1e-12);

  auto tiles = w.tiles;
  tiles[13].vertices[0].y += 0.02;
  const auto bad = check_closeness(tiles, 0.005);
  EXPECT_FALSE(bad.passed);
  ASSERT_TRUE(bad.worst_tile.has_value());
  EXPECT_EQ(*bad.worst_tile, tiles[13].key);
}

TEST(Verify, ReportsAreReproducible) {
  const auto a = check_pairwise_incongruent(certified().tiles, 1e-9);
  const auto b = check_pairwise_incongruent(certified().tiles, 1e-9);
  EXPECT_EQ(a.margin, b.margin);
  EXPECT_EQ(a.detail, b.detail);
  EXPECT_EQ(a.worst_residual, b.worst_residual);
}

TEST(Verify, OffenderListIsCapped) {
  auto tiles = certified().tiles;
  for (auto& t : tiles)
    for (auto& v : t.vertices) v = 1.001 * v;
  const auto r = check_equal_area(tiles, kS3, 1e-10);
  EXPECT_EQ(r.offenders.size(), VerificationReport::kMaxOffenders);
  EXPECT_EQ(r.offender_count, tiles.size());
}
