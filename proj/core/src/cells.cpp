#include "pursuit/cells.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pursuit/errors.hpp"

namespace pursuit {

namespace {

constexpr double kMinHalfWidth = 1e-6;    // m
constexpr double kMinSeparation = 1e-9;   // m

// Region rectangle as four half-planes, tagged for provenance.
void append_region_constraints(const BoundingRegion& region,
                               std::vector<CellConstraint>& out) {
  const Point2 lo = region.lower();
  const Point2 hi = region.upper();
  out.push_back({{{1.0, 0.0}, hi.x}, ConstraintSource::Region, -1});
  out.push_back({{{-1.0, 0.0}, -lo.x}, ConstraintSource::Region, -1});
  out.push_back({{{0.0, 1.0}, hi.y}, ConstraintSource::Region, -1});
  out.push_back({{{0.0, -1.0}, -lo.y}, ConstraintSource::Region, -1});
}

VoronoiCell assemble(const BoundingRegion& region,
                     std::vector<CellConstraint> constraints) {
  VoronoiCell cell;
  cell.polygon = region.rect();
  for (const CellConstraint& c : constraints) {
    if (c.source == ConstraintSource::Region) continue;  // already the rect
    cell.polygon = clip_halfplane(cell.polygon, c.plane);
    if (cell.polygon.empty()) break;
  }
  cell.constraints = std::move(constraints);
  cell.feasible = !cell.polygon.empty();
  return cell;
}

}  // namespace

BoundingRegion bounding_region(Point2 evader, std::span<const Point2> pursuers) {
  double half_x = 0.0;
  double half_y = 0.0;
  for (const Point2& p : pursuers) {
    half_x = std::max(half_x, std::abs(p.x - evader.x));
    half_y = std::max(half_y, std::abs(p.y - evader.y));
  }
  if (half_x < kMinHalfWidth || half_y < kMinHalfWidth) {
    throw DegenerateRegion("bounding region half-width below 1e-6 m on " +
                           std::string(half_x < kMinHalfWidth ? "x" : "y") +
                           " axis");
  }
  return {evader, half_x, half_y};
}

HalfPlane pairwise_halfplane(Point2 p_self, Point2 p_other, double buffer_radius) {
  const Vec2 a = p_other - p_self;
  const double len = norm(a);
  if (len <= kMinSeparation) {
    throw CoincidentAgents("agents closer than 1e-9 m, no separating bisector");
  }
  const double b = dot(a, 0.5 * (p_self + p_other));
  return {a, b - buffer_radius * len};
}

Vec2 separating_qp_solution(Point2 p, const Obstacle& obs) {
  const double d = dist_point_convex(p, obs.hull);
  if (d <= kGeomTol) {
    throw RobotInsideObstacle("point touches or is inside obstacle, QP infeasible");
  }
  // Dual form of the minimum-norm QP: with w* the closest point of the hull
  // to p (shifted so p is the origin), a = w* / |w*|^2 satisfies every vertex
  // constraint at >= 1 and has the smallest norm 1/|w*|.
  const Vec2 w = closest_point_convex(p, obs.hull) - p;
  return w / norm_sq(w);
}

HalfPlane obstacle_halfplane(Point2 p, const Obstacle& obs, double buffer_radius) {
  const double d = dist_point_convex(p, obs.hull);
  if (d <= buffer_radius + kGeomTol) {
    throw RobotInsideObstacle("point within buffer distance of obstacle");
  }
  const Vec2 a = separating_qp_solution(p, obs);
  double b = std::numeric_limits<double>::infinity();
  for (const Point2& v : obs.hull.vertices) b = std::min(b, dot(a, v));
  // Unit normal before retracting, so the buffer is a metric clearance.
  const double inv = 1.0 / norm(a);
  return {a * inv, b * inv - buffer_radius};
}

VoronoiCell build_pursuer_cell(std::size_t self, std::span<const Point2> pursuers,
                               Point2 evader, std::span<const double> radii,
                               std::span<const Obstacle> obstacles,
                               const BoundingRegion& region) {
  const Point2 p = pursuers[self];
  const double r = radii[self];
  std::vector<CellConstraint> constraints;
  constraints.reserve(4 + pursuers.size() + obstacles.size());
  append_region_constraints(region, constraints);
  for (std::size_t j = 0; j < pursuers.size(); ++j) {
    if (j == self) continue;
    constraints.push_back({pairwise_halfplane(p, pursuers[j], r),
                           ConstraintSource::Neighbor, static_cast<int>(j)});
  }
  constraints.push_back(
      {pairwise_halfplane(p, evader, 0.0), ConstraintSource::Evader, -1});
  for (std::size_t o = 0; o < obstacles.size(); ++o) {
    constraints.push_back({obstacle_halfplane(p, obstacles[o], r),
                           ConstraintSource::Obstacle, static_cast<int>(o)});
  }
  return assemble(region, std::move(constraints));
}

VoronoiCell build_evader_cell(std::span<const Point2> pursuers, Point2 evader,
                              std::span<const Obstacle> obstacles,
                              const BoundingRegion& region) {
  std::vector<CellConstraint> constraints;
  constraints.reserve(4 + pursuers.size() + obstacles.size());
  append_region_constraints(region, constraints);
  for (std::size_t j = 0; j < pursuers.size(); ++j) {
    constraints.push_back({pairwise_halfplane(evader, pursuers[j], 0.0),
                           ConstraintSource::Neighbor, static_cast<int>(j)});
  }
  for (std::size_t o = 0; o < obstacles.size(); ++o) {
    constraints.push_back({obstacle_halfplane(evader, obstacles[o], 0.0),
                           ConstraintSource::Obstacle, static_cast<int>(o)});
  }
  return assemble(region, std::move(constraints));
}

}  // namespace pursuit
