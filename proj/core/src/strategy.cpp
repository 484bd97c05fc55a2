#include "pursuit/strategy.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "pursuit/errors.hpp"

namespace pursuit {

namespace {

Vec2 toward(Point2 from, Point2 to, double v_max) {
  const Vec2 d = to - from;
  const double len = norm(d);
  if (len <= kCommandDeadBand) return {0.0, 0.0};
  return (v_max / len) * d;
}

}  // namespace

EncirclementStatus encirclement_status(std::span<const Point2> pursuers,
                                       Point2 evader, double capture_radius) {
  EncirclementStatus st;
  st.hull = convex_hull({pursuers.begin(), pursuers.end()});
  st.hull_size = static_cast<int>(st.hull.size());
  if (st.hull.degenerate()) {
    st.d_e = std::numeric_limits<double>::infinity();
    st.encircled = false;
  } else {
    st.d_e = signed_hull_distance(st.hull, evader);
    st.encircled = st.d_e <= 0.0;
  }
  st.d_c = std::numeric_limits<double>::infinity();
  for (const Point2& p : pursuers) st.d_c = std::min(st.d_c, distance(p, evader));
  st.captured = st.d_c <= capture_radius;
  return st;
}

double shrink_amount(const ShrinkPolicy& policy,
                     std::span<const double> displacements, double dt) {
  if (policy.mode == ShrinkMode::FixedRate) return policy.rate * dt;
  double d = std::numeric_limits<double>::infinity();
  for (double s : displacements) d = std::min(d, s);
  return displacements.empty() ? 0.0 : std::max(d, 0.0);
}

BoundingRegion shrink_region(const BoundingRegion& region, double amount,
                             double floor) {
  return {region.center, std::max(region.half_x - amount, floor),
          std::max(region.half_y - amount, floor)};
}

Vec2 pursuer_velocity_command(Point2 p, Point2 centroid, double v_max) {
  return toward(p, centroid, v_max);
}

ConvexPolygon evader_escape_cell(Point2 evader, std::span<const Point2> pursuers,
                                 std::span<const Obstacle> obstacles,
                                 double work_radius) {
  ConvexPolygon cell = make_rect(evader - Vec2{work_radius, work_radius},
                                 evader + Vec2{work_radius, work_radius});
  for (const Point2& p : pursuers) {
    if (distance(p, evader) <= 1e-9) continue;  // on top of us, no bisector
    cell = clip_halfplane(cell, pairwise_halfplane(evader, p, 0.0));
    if (cell.empty()) return cell;
  }
  for (const Obstacle& obs : obstacles) {
    if (dist_point_convex(evader, obs.hull) <= kGeomTol) continue;
    cell = clip_halfplane(cell, obstacle_halfplane(evader, obs, 0.0));
    if (cell.empty()) return cell;
  }
  return cell;
}

Vec2 evader_velocity_command(Point2 evader, std::span<const Point2> pursuers,
                             std::span<const Obstacle> obstacles,
                             double work_radius, double v_max) {
  const ConvexPolygon cell =
      evader_escape_cell(evader, pursuers, obstacles, work_radius);
  if (cell.degenerate()) return {0.0, 0.0};
  try {
    return toward(evader, polygon_mass_centroid(cell).centroid, v_max);
  } catch (const DegeneratePolygon&) {
    return {0.0, 0.0};
  }
}

Vec2 greedy_baseline_command(Point2 p, Point2 evader, double v_max) {
  return toward(p, evader, v_max);
}

}  // namespace pursuit
