#include "pursuit/scenario.hpp"

#include <cmath>
#include <string>

#include "pursuit/errors.hpp"

namespace pursuit {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidScenario(msg);
}

void check_limits(const DynamicLimits& lim, const std::string& who) {
  require(lim.v_max > 0.0, who + " v_max must be positive");
  require(lim.a_max > 0.0, who + " a_max must be positive");
  require(lim.j_max > 0.0, who + " j_max must be positive");
}

}  // namespace

void validate_scenario(const Scenario& s) {
  require(s.dt > 0.0, "dt must be positive");
  require(s.max_time > 0.0, "max_time must be positive");
  require(s.evader_radius > 0.0, "evader radius must be positive");
  require(s.capture_radius > 0.0, "capture radius must be positive");
  require(s.evader_work_radius > 0.0, "evader work radius must be positive");
  require(s.escape_range >= 0.0, "escape range must be non-negative");
  require(s.shrink.rate > 0.0, "shrink rate must be positive");
  require(s.shrink.floor > 0.0, "shrink floor must be positive");
  require(s.mpc_weights.lambda_u >= 0.0 && s.mpc_weights.lambda_p >= 0.0,
          "mpc weights must be non-negative");
  require(s.mpc_weights.lambda_u > 0.0 || s.mpc_weights.lambda_p > 0.0,
          "mpc weights must not both be zero");
  require(s.mpc_substeps >= 2, "mpc substeps must be at least 2");
  check_limits(s.pursuer_limits, "pursuer");
  check_limits(s.evader_limits, "evader");
  require(is_finite(s.evader_start), "evader start must be finite");

  for (std::size_t o = 0; o < s.obstacles.size(); ++o) {
    const ConvexPolygon& hull = s.obstacles[o].hull;
    const std::string name = "obstacle " + std::to_string(o);
    require(hull.size() >= 3, name + " needs at least 3 vertices");
    for (const Point2& v : hull.vertices) {
      require(is_finite(v), name + " has a non-finite vertex");
    }
    require(is_convex_ccw(hull), name + " is not convex counterclockwise");
    require(polygon_area(hull) > 0.0, name + " has zero area");
  }

  if (s.forest) {
    const ForestParams& f = *s.forest;
    require(f.obstacle_count >= 0, "forest obstacle count must be >= 0");
    require(f.pursuer_count >= 0, "forest pursuer count must be >= 0");
    require(f.area_half > 0.0, "forest area half-width must be positive");
    require(f.obstacle_radius_min > 0.0 &&
                f.obstacle_radius_max >= f.obstacle_radius_min,
            "forest obstacle radius range is invalid");
    require(f.obstacle_count == 0 || f.area_half > f.obstacle_radius_max,
            "forest area too small for the obstacle radius");
    require(f.min_clearance >= 0.0, "forest min clearance must be >= 0");
    if (f.spawn_mode == SpawnMode::Box) {
      require(f.spawn_box_hi.x > f.spawn_box_lo.x &&
                  f.spawn_box_hi.y > f.spawn_box_lo.y,
              "forest spawn box is empty");
    } else {
      require(f.spawn_ring_min > 0.0 && f.spawn_ring_max >= f.spawn_ring_min,
              "forest spawn ring range is invalid");
    }
    // Layout fields are generated per seed and re-validated afterwards.
    return;
  }

  const std::size_t n = s.pursuer_starts.size();
  require(s.pursuer_radii.size() == n,
          "pursuer radii count does not match pursuer starts");
  for (std::size_t i = 0; i < n; ++i) {
    require(is_finite(s.pursuer_starts[i]),
            "pursuer " + std::to_string(i) + " start must be finite");
    require(s.pursuer_radii[i] > 0.0,
            "pursuer " + std::to_string(i) + " radius must be positive");
    require(s.capture_radius > s.pursuer_radii[i] + s.evader_radius,
            "capture radius must exceed r_i + r_e for pursuer " +
                std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(s.pursuer_starts[i], s.pursuer_starts[j]);
      require(d > s.pursuer_radii[i] + s.pursuer_radii[j],
              "pursuer " + std::to_string(i) + " and pursuer " +
                  std::to_string(j) + " start closer than r_i + r_j");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = 0; o < s.obstacles.size(); ++o) {
      require(dist_point_convex(s.pursuer_starts[i], s.obstacles[o].hull) >
                  s.pursuer_radii[i],
              "pursuer " + std::to_string(i) + " starts inside obstacle " +
                  std::to_string(o) + " safety margin");
    }
  }
  for (std::size_t o = 0; o < s.obstacles.size(); ++o) {
    require(dist_point_convex(s.evader_start, s.obstacles[o].hull) >
                s.evader_radius,
            "evader starts inside obstacle " + std::to_string(o) +
                " safety margin");
  }
}

}  // namespace pursuit
