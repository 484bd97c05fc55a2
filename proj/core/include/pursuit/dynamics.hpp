#pragma once

#include <vector>

#include "pursuit/cells.hpp"
#include "pursuit/geometry.hpp"

namespace pursuit {

struct FullState {
  Point2 p;
  Vec2 v;
  Vec2 a;
};

struct DynamicLimits {
  double v_max = 1.0;  // m/s
  double a_max = 2.0;  // m/s^2
  double j_max = 5.0;  // m/s^3
};

// Constant-jerk trajectory over one replanning horizon, sampled at uniform
// times including both endpoints. Samples come from the exact closed-form
// integration of the triple integrator.
struct MotionPrimitive {
  Vec2 jerk;
  double horizon = 0.0;  // s
  std::vector<FullState> samples;
};

struct MpcWeights {
  double lambda_u = 1e-6;  // control-effort weight, tie-break scale
  double lambda_p = 1.0;   // centroid-tracking weight
};

struct MpcResult {
  MotionPrimitive primitive;
  double cost = 0.0;
  // False when even the braking primitive leaves the cell; the caller gets
  // the braking primitive anyway and should log a safety event.
  bool feasible = true;
};

Point2 step_single_integrator(Point2 p, Vec2 v, double dt);

// Exact state at time t under constant jerk from x0.
FullState propagate_constant_jerk(const FullState& x0, Vec2 jerk, double t);

// substeps uniform intervals -> substeps + 1 samples. Throws JerkExceedsLimit
// when |jerk| > j_max.
MotionPrimitive generate_primitive(const FullState& x0, Vec2 jerk,
                                   double horizon, int substeps, double j_max);

// Evaluates a finite constant-jerk candidate set (5x5 grid over
// {-J, -J/2, 0, J/2, J}^2 norm-clamped to J, a centroid-seeded candidate, and
// a maximal-braking candidate), discards candidates that exceed the velocity
// or acceleration limits at any sample or whose position path leaves the cell
// at any time (checked continuously per half-plane via the cubic's extrema),
// and returns the feasible candidate minimizing the trapezoid-rule integral
// of lambda_u |u|^2 + lambda_p |p(t) - centroid|^2. Throws NoFeasiblePrimitive
// when x0.p is outside the cell polygon.
MpcResult select_primitive_mpc(const FullState& x0, const VoronoiCell& cell,
                               Point2 centroid, const DynamicLimits& limits,
                               const MpcWeights& weights, double horizon,
                               int substeps = 10);

// Primitive state at time dt (<= horizon), velocity/acceleration clamped to
// the limits.
FullState step_triple_integrator(const FullState& x0, const MotionPrimitive& prim,
                                 double dt, const DynamicLimits& limits);

}  // namespace pursuit
