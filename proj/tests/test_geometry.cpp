#include "pursuit/geometry.hpp"

#include <cmath>

#include "doctest.h"
#include "pursuit/errors.hpp"
#include "pursuit/rng.hpp"
#include "test_support.hpp"

using namespace pursuit;
using pursuit::testing::polygon_distance_search;
using pursuit::testing::random_convex_polygon;

namespace {

const ConvexPolygon kUnitSquare = make_rect({0.0, 0.0}, {1.0, 1.0});

bool approx_point(Point2 a, Point2 b, double tol = 1e-9) {
  return distance(a, b) <= tol;
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("clip keeps the inside of an axis-aligned cut") {
  const ConvexPolygon out = clip_halfplane(kUnitSquare, {{1.0, 0.0}, 0.5});
  REQUIRE(out.size() == 4);
  CHECK(polygon_area(out) == doctest::Approx(0.5));
  for (const Point2& v : out.vertices) {
    CHECK(v.x <= 0.5 + 1e-12);
  }
  CHECK(is_convex_ccw(out));
}

TEST_CASE("clip with a non-binding constraint returns the input") {
  const ConvexPolygon out = clip_halfplane(kUnitSquare, {{1.0, 0.0}, 2.0});
  REQUIRE(out.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(approx_point(out.vertices[i], kUnitSquare.vertices[i]));
  }
}

TEST_CASE("clip with an infeasible constraint empties the polygon") {
  CHECK(clip_halfplane(kUnitSquare, {{1.0, 0.0}, -1.0}).empty());
  CHECK(clip_halfplane(ConvexPolygon{}, {{1.0, 0.0}, 0.0}).empty());
}

TEST_CASE("mass centroid of the unit square") {
  const MassCentroid mc = polygon_mass_centroid(kUnitSquare);
  CHECK(mc.mass == doctest::Approx(1.0));
  CHECK(approx_point(mc.centroid, {0.5, 0.5}));
}

TEST_CASE("mass centroid of a right triangle") {
  const ConvexPolygon tri{{{0.0, 0.0}, {3.0, 0.0}, {0.0, 3.0}}};
  const MassCentroid mc = polygon_mass_centroid(tri);
  CHECK(mc.mass == doctest::Approx(4.5));
  CHECK(approx_point(mc.centroid, {1.0, 1.0}));
}

TEST_CASE("degenerate polygons have no centroid") {
  CHECK_THROWS_AS(polygon_mass_centroid(ConvexPolygon{{{0.0, 0.0}, {1.0, 0.0}}}),
                  DegeneratePolygon);
}

TEST_CASE("second moment of the unit square") {
  CHECK(polygon_second_moment(kUnitSquare, {0.5, 0.5}) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(polygon_second_moment(kUnitSquare, {0.0, 0.0}) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(polygon_second_moment(kUnitSquare, {0.5, 0.5}) <
        polygon_second_moment(kUnitSquare, {0.6, 0.5}));
}

TEST_CASE("hull drops interior and collinear points") {
  const ConvexPolygon hull =
      convex_hull({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}});
  CHECK(hull.size() == 4);
  CHECK(is_convex_ccw(hull));
  CHECK(polygon_area(hull) == doctest::Approx(4.0));

  const ConvexPolygon segment = convex_hull({{0, 0}, {1, 0}, {2, 0}});
  CHECK(segment.size() == 2);
  CHECK(segment.degenerate());

  const ConvexPolygon single = convex_hull({{3.0, 4.0}});
  CHECK(single.size() == 1);
  CHECK(single.degenerate());
}

TEST_CASE("signed hull distance") {
  const ConvexPolygon hull = make_rect({-2.0, -2.0}, {2.0, 2.0});
  CHECK(signed_hull_distance(hull, {0.0, 0.0}) == doctest::Approx(-2.0));
  CHECK(signed_hull_distance(hull, {5.0, 0.0}) == doctest::Approx(3.0));
  CHECK(signed_hull_distance(hull, {2.0, 0.5}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(signed_hull_distance(convex_hull({{0, 0}, {1, 0}}), {0, 0}),
                  DegenerateHull);
}

TEST_CASE("point-to-polygon distance") {
  const ConvexPolygon box = make_rect({2.0, -1.0}, {4.0, 1.0});
  CHECK(dist_point_convex({0.0, 0.0}, box) == doctest::Approx(2.0));
  CHECK(dist_point_convex({3.0, 0.0}, box) == doctest::Approx(0.0));
  CHECK(dist_point_convex({5.0, 2.0}, box) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("polygon-to-polygon distance") {
  const ConvexPolygon a = make_rect({0.0, 0.0}, {1.0, 1.0});
  const ConvexPolygon b = make_rect({2.0, 0.0}, {3.0, 1.0});
  CHECK(polytope_min_distance(a, b) == doctest::Approx(1.0));

  const ConvexPolygon overlap = make_rect({0.5, 0.5}, {1.5, 1.5});
  CHECK(polytope_min_distance(a, overlap) == doctest::Approx(0.0));

  const ConvexPolygon corner = make_rect({1.0, 1.0}, {2.0, 2.0});
  CHECK(polytope_min_distance(a, corner) == doctest::Approx(0.0));
}

TEST_CASE("clipping is idempotent and monotone in area") {
  Rng rng(101);
  for (int it = 0; it < 200; ++it) {
    const ConvexPolygon poly = random_convex_polygon(rng, {0.0, 0.0}, 3.0);
    const double th = rng.uniform(0.0, 2.0 * M_PI);
    const HalfPlane h{{std::cos(th), std::sin(th)}, rng.uniform(-2.0, 2.0)};
    const ConvexPolygon once = clip_halfplane(poly, h);
    const ConvexPolygon twice = clip_halfplane(once, h);
    CHECK(polygon_area(once) <= polygon_area(poly) + 1e-12);
    REQUIRE(once.size() == twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
      CHECK(approx_point(once.vertices[i], twice.vertices[i], 1e-9));
    }
  }
}

TEST_CASE("centroids lie strictly inside") {
  Rng rng(202);
  for (int it = 0; it < 200; ++it) {
    const ConvexPolygon poly = random_convex_polygon(rng, {0.0, 0.0}, 4.0);
    const MassCentroid mc = polygon_mass_centroid(poly);
    CHECK(point_in_convex(poly, mc.centroid, 0.0));
    CHECK(signed_hull_distance(poly, mc.centroid) < 0.0);
  }
}

TEST_CASE("the centroid minimizes the second moment") {
  Rng rng(303);
  for (int it = 0; it < 100; ++it) {
    const ConvexPolygon poly = random_convex_polygon(rng, {0.0, 0.0}, 3.0);
    const Point2 c = polygon_mass_centroid(poly).centroid;
    const double at_centroid = polygon_second_moment(poly, c);
    for (int probe = 0; probe < 100; ++probe) {
      const Point2 q{rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
      CHECK(at_centroid <= polygon_second_moment(poly, q) + 1e-12);
    }
  }
}

TEST_CASE("signed distance magnitude matches the unsigned one outside") {
  Rng rng(404);
  for (int it = 0; it < 200; ++it) {
    const ConvexPolygon poly = random_convex_polygon(rng, {0.0, 0.0}, 2.0);
    const Point2 q{rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0)};
    const double unsigned_d = dist_point_convex(q, poly);
    if (unsigned_d <= 1e-9) continue;
    CHECK(signed_hull_distance(poly, q) == doctest::Approx(unsigned_d).epsilon(1e-9));
  }
}

TEST_CASE("polytope distance matches an independent search oracle") {
  Rng rng(505);
  int checked = 0;
  while (checked < 60) {
    const ConvexPolygon a = random_convex_polygon(rng, {0.0, 0.0}, 2.0);
    const Point2 offset{rng.uniform(-7.0, 7.0), rng.uniform(-7.0, 7.0)};
    const ConvexPolygon b = random_convex_polygon(rng, offset, 2.0);
    const double fast = polytope_min_distance(a, b);
    if (fast <= 1e-6) continue;  // disjointness handled by the exact cases
    CHECK(fast == doctest::Approx(polygon_distance_search(a, b)).epsilon(1e-6));
    ++checked;
  }
}

TEST_SUITE_END();
