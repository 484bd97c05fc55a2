#pragma once

#include <span>
#include <vector>

#include "pursuit/geometry.hpp"

namespace pursuit {

// Axis-aligned rectangle centered on the evader that bounds every cell.
struct BoundingRegion {
  Point2 center;
  double half_x = 0.0;  // m
  double half_y = 0.0;  // m

  Point2 lower() const { return {center.x - half_x, center.y - half_y}; }
  Point2 upper() const { return {center.x + half_x, center.y + half_y}; }
  ConvexPolygon rect() const { return make_rect(lower(), upper()); }
  bool contains(Point2 p, double tol = kGeomTol) const {
    return std::abs(p.x - center.x) <= half_x + tol &&
           std::abs(p.y - center.y) <= half_y + tol;
  }
};

struct Obstacle {
  ConvexPolygon hull;  // >= 3 vertices, positive area, CCW
};

enum class ConstraintSource { Region, Neighbor, Evader, Obstacle };

struct CellConstraint {
  HalfPlane plane;
  ConstraintSource source;
  int other = -1;  // neighbor or obstacle index, -1 otherwise
};

// One agent's safe cell: the region rectangle clipped by all constraints.
// feasible iff the clipped polygon is non-empty.
struct VoronoiCell {
  ConvexPolygon polygon;
  std::vector<CellConstraint> constraints;
  bool feasible = false;
};

// Smallest evader-centered rectangle containing all pursuers: half-widths are
// the maximum per-axis distances to the evader. Throws DegenerateRegion when
// either half-width falls below 1e-6 m (callers inflate by the capture
// radius).
BoundingRegion bounding_region(Point2 evader, std::span<const Point2> pursuers);

// Half-plane through the midpoint of (p_self, p_other), normal pointing at
// p_other, boundary retracted toward p_self by buffer_radius meters. p_self
// satisfies the constraint whenever buffer_radius < |p_self - p_other| / 2.
// Throws CoincidentAgents below 1e-9 m separation.
HalfPlane pairwise_halfplane(Point2 p_self, Point2 p_other, double buffer_radius);

// Raw minimum-norm solution of  min |a|^2  s.t.  (v - p) . a >= 1  for every
// obstacle vertex v. Feasible exactly when p is strictly outside the hull.
Vec2 separating_qp_solution(Point2 p, const Obstacle& obs);

// Separating half-plane containing p, tight against the obstacle, normalized
// to a unit normal and then retracted by buffer_radius meters so every point
// satisfying it keeps at least that clearance from the obstacle. Throws
// RobotInsideObstacle when p is not strictly outside by more than
// buffer_radius.
HalfPlane obstacle_halfplane(Point2 p, const Obstacle& obs, double buffer_radius);

// Cell of pursuer `self`: region rectangle cut by buffered neighbor
// half-planes (buffer = radii[self]), buffered obstacle half-planes (same
// buffer), and the unbuffered evader half-plane.
VoronoiCell build_pursuer_cell(std::size_t self, std::span<const Point2> pursuers,
                               Point2 evader, std::span<const double> radii,
                               std::span<const Obstacle> obstacles,
                               const BoundingRegion& region);

// Evader cell: unbuffered bisectors against every pursuer plus unbuffered
// obstacle half-planes, clipped to the region.
VoronoiCell build_evader_cell(std::span<const Point2> pursuers, Point2 evader,
                              std::span<const Obstacle> obstacles,
                              const BoundingRegion& region);

}  // namespace pursuit
