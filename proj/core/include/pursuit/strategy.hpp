#pragma once

#include <span>

#include "pursuit/cells.hpp"
#include "pursuit/geometry.hpp"

namespace pursuit {

// Commands below this distance from the target are zeroed.
inline constexpr double kCommandDeadBand = 1e-6;  // m

// Once the hull closes around the evader, the capture phase tolerates the
// signed hull distance drifting above zero by up to this much.
inline constexpr double kEncircleHysteresis = 0.1;  // m

struct EncirclementStatus {
  double d_e = 0.0;  // signed distance evader -> hull boundary; +inf sentinel
                     // when the hull is degenerate
  double d_c = 0.0;  // nearest pursuer distance
  bool encircled = false;
  bool captured = false;
  ConvexPolygon hull;
  int hull_size = 0;
};

enum class ShrinkMode { MinDisplacement, FixedRate };

struct ShrinkPolicy {
  ShrinkMode mode = ShrinkMode::MinDisplacement;
  double rate = 1.0;   // m/s, fixed-rate mode only
  double floor = 1.0;  // m, minimum region half-width
};

// Hull of the pursuers plus the signed/nearest distances that define the
// encirclement and capture conditions. Fewer than 3 effective hull vertices
// never count as encirclement (d_e = +inf).
EncirclementStatus encirclement_status(std::span<const Point2> pursuers,
                                       Point2 evader, double capture_radius);

// Region shrink per step: the smallest pursuer displacement of the last step
// (conservative, cannot outrun anyone), or rate * dt in fixed-rate mode.
double shrink_amount(const ShrinkPolicy& policy,
                     std::span<const double> displacements, double dt);

// Both half-widths reduced by `amount`, clamped below at `floor`; the center
// is untouched (the engine recenters on the evader every tick).
BoundingRegion shrink_region(const BoundingRegion& region, double amount,
                             double floor);

// Full-speed unit-direction command toward the cell centroid (zero inside the
// dead band).
Vec2 pursuer_velocity_command(Point2 p, Point2 centroid, double v_max);

// Standard Voronoi cell of the evader against the pursuers, clipped to a
// square of half-width work_radius centered on the evader; obstacle
// half-planes are added only when obstacles are passed in. Empty when fully
// cut away.
ConvexPolygon evader_escape_cell(Point2 evader, std::span<const Point2> pursuers,
                                 std::span<const Obstacle> obstacles,
                                 double work_radius);

// Escape command: full speed toward the centroid of the escape cell. Zero
// command when the cell is empty or degenerate.
Vec2 evader_velocity_command(Point2 evader, std::span<const Point2> pursuers,
                             std::span<const Obstacle> obstacles,
                             double work_radius, double v_max);

// Straight-line pursuit of the evader at full speed; comparison baseline.
Vec2 greedy_baseline_command(Point2 p, Point2 evader, double v_max);

}  // namespace pursuit
