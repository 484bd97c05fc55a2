#include "pursuit/cells.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "pursuit/errors.hpp"
#include "pursuit/qp_oracle.hpp"
#include "pursuit/rng.hpp"
#include "test_support.hpp"

using namespace pursuit;

namespace {

// Random collision-free configuration: pursuers + evader pairwise clear,
// pursuers clear of every obstacle by more than their radius.
struct SafeConfig {
  std::vector<Point2> pursuers;
  Point2 evader;
  std::vector<double> radii;
  std::vector<Obstacle> obstacles;
  BoundingRegion region;
};

SafeConfig random_safe_config(Rng& rng, int max_obstacles = 3) {
  for (;;) {
    SafeConfig cfg;
    const int n = rng.uniform_int(2, 6);
    const double r = 0.15;
    cfg.evader = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const Point2 p{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
      ok = distance(p, cfg.evader) > 0.8;
      for (const Point2& q : cfg.pursuers) ok = ok && distance(p, q) > 2.0 * r * 1.05;
      if (ok) {
        cfg.pursuers.push_back(p);
        cfg.radii.push_back(r);
      }
    }
    if (!ok) continue;
    const int m = rng.uniform_int(0, max_obstacles);
    for (int o = 0; o < m && ok; ++o) {
      const Point2 c{rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
      const Obstacle obs{make_regular_polygon(c, rng.uniform(0.2, 0.6),
                                              rng.uniform_int(3, 8),
                                              rng.uniform(0.0, 2.0 * M_PI))};
      ok = dist_point_convex(cfg.evader, obs.hull) > 0.2;
      for (const Point2& q : cfg.pursuers) {
        ok = ok && dist_point_convex(q, obs.hull) > r * 1.1;
      }
      if (ok) cfg.obstacles.push_back(obs);
    }
    if (!ok) continue;
    try {
      cfg.region = bounding_region(cfg.evader, cfg.pursuers);
    } catch (const DegenerateRegion&) {
      continue;
    }
    return cfg;
  }
}

int nearest_agent(const SafeConfig& cfg, Point2 p) {
  int best = -1;  // -1 = evader
  double best_d = distance(p, cfg.evader);
  for (std::size_t i = 0; i < cfg.pursuers.size(); ++i) {
    const double d = distance(p, cfg.pursuers[i]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace

TEST_SUITE_BEGIN("cells");

TEST_CASE("bounding region takes per-axis maxima") {
  const std::vector<Point2> pursuers{{3.0, 1.0}, {-2.0, 4.0}, {1.0, -5.0}};
  const BoundingRegion r = bounding_region({0.0, 0.0}, pursuers);
  CHECK(r.half_x == doctest::Approx(3.0));
  CHECK(r.half_y == doctest::Approx(5.0));
  for (const Point2& p : pursuers) CHECK(r.contains(p));

  const std::vector<Point2> one{{1.0, 1.0}};
  const BoundingRegion r1 = bounding_region({0.0, 0.0}, one);
  CHECK(r1.half_x == doctest::Approx(1.0));
  CHECK(r1.half_y == doctest::Approx(1.0));
}

TEST_CASE("axis-aligned configurations degenerate the region") {
  const std::vector<Point2> aligned{{0.0, 1.0}, {0.0, -2.0}};
  CHECK_THROWS_AS(bounding_region({0.0, 0.0}, aligned), DegenerateRegion);
}

TEST_CASE("pairwise half-plane is the bisector, retracted by the buffer") {
  const HalfPlane plain = pairwise_halfplane({0.0, 0.0}, {2.0, 0.0}, 0.0);
  CHECK(plain.contains({0.0, 0.0}));
  CHECK(plain.eval({1.0, 0.0}) == doctest::Approx(0.0));  // boundary x = 1
  CHECK(!plain.contains({1.1, 0.0}));

  const HalfPlane buffered = pairwise_halfplane({0.0, 0.0}, {2.0, 0.0}, 0.15);
  CHECK(buffered.eval({0.85, 0.0}) == doctest::Approx(0.0));  // x = 0.85
  CHECK(buffered.contains({0.0, 0.0}));

  CHECK_THROWS_AS(pairwise_halfplane({1.0, 1.0}, {1.0, 1.0}, 0.0),
                  CoincidentAgents);
}

TEST_CASE("obstacle half-plane solves the separating QP") {
  const Obstacle box{make_rect({2.0, -1.0}, {4.0, 1.0})};

  const Vec2 raw = separating_qp_solution({0.0, 0.0}, box);
  CHECK(raw.x == doctest::Approx(0.5));
  CHECK(raw.y == doctest::Approx(0.0));

  const HalfPlane plane = obstacle_halfplane({0.0, 0.0}, box, 0.0);
  CHECK(norm(plane.normal) == doctest::Approx(1.0));
  CHECK(plane.eval({2.0, 0.3}) == doctest::Approx(0.0));  // boundary x = 2
  CHECK(plane.contains({0.0, 0.0}));

  const HalfPlane buffered = obstacle_halfplane({0.0, 0.0}, box, 0.15);
  CHECK(buffered.eval({1.85, 0.0}) == doctest::Approx(0.0));  // x = 1.85

  CHECK_THROWS_AS(obstacle_halfplane({3.0, 0.0}, box, 0.0), RobotInsideObstacle);
}

TEST_CASE("two-pursuer cell matches the nearest-agent rule by dense sampling") {
  const std::vector<Point2> pursuers{{-1.0, 0.0}, {1.0, 0.0}};
  const std::vector<double> radii{0.0, 0.0};
  const Point2 evader{0.0, 2.0};
  const BoundingRegion region = bounding_region(evader, pursuers);
  const VoronoiCell cell =
      build_pursuer_cell(0, pursuers, evader, radii, {}, region);
  REQUIRE(cell.feasible);
  CHECK(point_in_convex(cell.polygon, pursuers[0]));

  // Every cell vertex is left of x = 0; sampled interior points are nearest
  // to pursuer 0.
  for (const Point2& v : cell.polygon.vertices) {
    CHECK(v.x <= 1e-9);
  }
  SafeConfig cfg{pursuers, evader, radii, {}, region};
  Rng rng(42);
  for (int it = 0; it < 2000; ++it) {
    const Point2 q{rng.uniform(region.lower().x, region.upper().x),
                   rng.uniform(region.lower().y, region.upper().y)};
    if (point_in_convex(cell.polygon, q, -1e-6)) {
      CHECK(nearest_agent(cfg, q) == 0);
    }
  }
}

TEST_CASE("single pursuer cell is the region cut by the evader bisector") {
  const std::vector<Point2> pursuers{{2.0, 1.0}};
  const std::vector<double> radii{0.0};
  const BoundingRegion region = bounding_region({0.0, 0.0}, pursuers);
  const VoronoiCell cell =
      build_pursuer_cell(0, pursuers, {0.0, 0.0}, radii, {}, region);
  REQUIRE(cell.feasible);
  // 4 region constraints + 1 evader bisector, no neighbors.
  CHECK(cell.constraints.size() == 5);
  const ConvexPolygon expect =
      clip_halfplane(region.rect(), pairwise_halfplane({2.0, 1.0}, {0.0, 0.0}, 0.0));
  CHECK(polygon_area(cell.polygon) == doctest::Approx(polygon_area(expect)));
}

TEST_CASE("conflicting buffered constraints produce an infeasible cell") {
  // Pursuer 0 squeezed between a neighbor above and an obstacle below, with a
  // safety radius so large the buffered half-planes cannot both hold:
  // neighbor demands y <= -1.5, obstacle demands y >= -0.2.
  const std::vector<Point2> pursuers{{0.0, 0.0}, {0.0, 1.0}};
  const std::vector<double> radii{2.0, 2.0};
  const std::vector<Obstacle> obstacles{
      Obstacle{make_rect({-5.0, -3.2}, {5.0, -2.2})}};
  const BoundingRegion region{{2.0, 0.0}, 6.0, 6.0};
  const VoronoiCell cell = build_pursuer_cell(0, pursuers, {2.0, 0.0}, radii,
                                              obstacles, region);
  CHECK(!cell.feasible);
  CHECK(cell.polygon.empty());
}

TEST_CASE("evader cell among four symmetric pursuers") {
  const std::vector<Point2> pursuers{
      {2.0, 0.0}, {-2.0, 0.0}, {0.0, 2.0}, {0.0, -2.0}};
  const BoundingRegion region{{0.0, 0.0}, 2.0, 2.0};
  const VoronoiCell cell = build_evader_cell(pursuers, {0.0, 0.0}, {}, region);
  REQUIRE(cell.feasible);
  CHECK(polygon_area(cell.polygon) == doctest::Approx(4.0));  // [-1,1]^2

  SafeConfig cfg{pursuers, {0.0, 0.0}, {0, 0, 0, 0}, {}, region};
  Rng rng(7);
  for (int it = 0; it < 2000; ++it) {
    const Point2 q{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    if (point_in_convex(cell.polygon, q, -1e-6)) {
      CHECK(nearest_agent(cfg, q) == -1);
    }
  }
}

TEST_CASE("evader cell edge cases") {
  const BoundingRegion region{{1.0, 1.0}, 3.0, 2.0};
  const VoronoiCell empty_world = build_evader_cell({}, {1.0, 1.0}, {}, region);
  REQUIRE(empty_world.feasible);
  CHECK(polygon_area(empty_world.polygon) == doctest::Approx(24.0));

  Rng rng(11);
  for (int it = 0; it < 100; ++it) {
    SafeConfig cfg = random_safe_config(rng);
    const VoronoiCell cell =
        build_evader_cell(cfg.pursuers, cfg.evader, cfg.obstacles, cfg.region);
    CHECK(cell.feasible);
    CHECK(point_in_convex(cell.polygon, cfg.evader, 1e-7));
  }
}

TEST_CASE("self-containment on random safe configurations") {
  Rng rng(1234);
  for (int it = 0; it < 300; ++it) {
    const SafeConfig cfg = random_safe_config(rng);
    for (std::size_t i = 0; i < cfg.pursuers.size(); ++i) {
      const VoronoiCell cell = build_pursuer_cell(
          i, cfg.pursuers, cfg.evader, cfg.radii, cfg.obstacles, cfg.region);
      REQUIRE(cell.feasible);
      CHECK(point_in_convex(cell.polygon, cfg.pursuers[i], 1e-7));
    }
  }
}

TEST_CASE("buffered cells keep the pairwise and obstacle margins") {
  Rng rng(77);
  for (int it = 0; it < 150; ++it) {
    const SafeConfig cfg = random_safe_config(rng);
    std::vector<VoronoiCell> cells;
    for (std::size_t i = 0; i < cfg.pursuers.size(); ++i) {
      cells.push_back(build_pursuer_cell(i, cfg.pursuers, cfg.evader, cfg.radii,
                                         cfg.obstacles, cfg.region));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!cells[i].feasible) continue;
      for (std::size_t j = i + 1; j < cells.size(); ++j) {
        if (!cells[j].feasible) continue;
        CHECK(polytope_min_distance(cells[i].polygon, cells[j].polygon) >=
              cfg.radii[i] + cfg.radii[j] - 1e-6);
      }
      for (const Obstacle& obs : cfg.obstacles) {
        CHECK(polytope_min_distance(cells[i].polygon, obs.hull) >=
              cfg.radii[i] - 1e-6);
      }
    }
  }
}

TEST_CASE("unbuffered cells reduce to the nearest-agent rule") {
  Rng rng(99);
  for (int it = 0; it < 30; ++it) {
    SafeConfig cfg = random_safe_config(rng, 0);
    std::fill(cfg.radii.begin(), cfg.radii.end(), 0.0);
    std::vector<VoronoiCell> cells;
    for (std::size_t i = 0; i < cfg.pursuers.size(); ++i) {
      cells.push_back(build_pursuer_cell(i, cfg.pursuers, cfg.evader, cfg.radii,
                                         {}, cfg.region));
    }
    for (int sample = 0; sample < 300; ++sample) {
      const Point2 q{rng.uniform(cfg.region.lower().x, cfg.region.upper().x),
                     rng.uniform(cfg.region.lower().y, cfg.region.upper().y)};
      const int owner = nearest_agent(cfg, q);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (point_in_convex(cells[i].polygon, q, -1e-6)) {
          CHECK(owner == static_cast<int>(i));
        }
      }
    }
  }
}

TEST_CASE("QP solution matches the brute-force active-set enumeration") {
  const QpFuzzReport report = run_qp_fuzz(100, 2024);
  CHECK(report.cases == 100);
  CHECK(report.max_deviation <= 1e-6);
  CHECK(report.all_separating);
}

TEST_SUITE_END();
