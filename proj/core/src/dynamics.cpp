#include "pursuit/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "pursuit/errors.hpp"

namespace pursuit {

namespace {

constexpr double kLimitTol = 1e-9;

Vec2 clamp_norm(Vec2 v, double max_norm) {
  const double n = norm(v);
  return n > max_norm ? (max_norm / n) * v : v;
}

// Maximum over [0, T] of the cubic c0 + c1 t + c2 t^2 + c3 t^3, taken at the
// endpoints and any interior critical points.
double cubic_max(double c0, double c1, double c2, double c3, double T) {
  auto eval = [&](double t) { return c0 + t * (c1 + t * (c2 + t * c3)); };
  double best = std::max(eval(0.0), eval(T));
  // roots of c1 + 2 c2 t + 3 c3 t^2
  const double qa = 3.0 * c3;
  const double qb = 2.0 * c2;
  const double qc = c1;
  if (std::abs(qa) < 1e-300) {
    if (std::abs(qb) > 1e-300) {
      const double t = -qc / qb;
      if (t > 0.0 && t < T) best = std::max(best, eval(t));
    }
    return best;
  }
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return best;
  const double sq = std::sqrt(disc);
  for (double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
    if (t > 0.0 && t < T) best = std::max(best, eval(t));
  }
  return best;
}

// True when the constant-jerk position path stays inside the polygon for all
// of [0, T]; every active edge is a cubic constraint with closed-form extrema.
bool path_in_polygon(const FullState& x0, Vec2 jerk, double T,
                     const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  if (v.size() < 3) return false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const Vec2 edge = v[i] - v[j];
    const double len = norm(edge);
    if (len <= kGeomTol) continue;
    const Vec2 n = Vec2{edge.y, -edge.x} / len;  // outward unit normal
    const double c0 = dot(n, x0.p) - dot(n, v[j]);
    const double c1 = dot(n, x0.v);
    const double c2 = 0.5 * dot(n, x0.a);
    const double c3 = dot(n, jerk) / 6.0;
    if (cubic_max(c0, c1, c2, c3, T) > kLimitTol) return false;
  }
  return true;
}

struct Candidate {
  MotionPrimitive primitive;
  double cost = 0.0;
  bool feasible = false;
};

double primitive_cost(const MotionPrimitive& prim, Point2 centroid,
                      const MpcWeights& w) {
  const double effort = w.lambda_u * norm_sq(prim.jerk);
  const std::size_t n = prim.samples.size();
  const double dt = prim.horizon / static_cast<double>(n - 1);
  double integral = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double track = w.lambda_p * norm_sq(prim.samples[k].p - centroid);
    const double weight = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    integral += weight * (effort + track) * dt;
  }
  return integral;
}

bool within_limits(const MotionPrimitive& prim, const DynamicLimits& lim) {
  for (const FullState& s : prim.samples) {
    if (norm(s.v) > lim.v_max + kLimitTol) return false;
    if (norm(s.a) > lim.a_max + kLimitTol) return false;
  }
  return true;
}

}  // namespace

Point2 step_single_integrator(Point2 p, Vec2 v, double dt) {
  return p + dt * v;
}

FullState propagate_constant_jerk(const FullState& x0, Vec2 jerk, double t) {
  FullState s;
  s.p = x0.p + t * x0.v + (t * t / 2.0) * x0.a + (t * t * t / 6.0) * jerk;
  s.v = x0.v + t * x0.a + (t * t / 2.0) * jerk;
  s.a = x0.a + t * jerk;
  return s;
}

MotionPrimitive generate_primitive(const FullState& x0, Vec2 jerk,
                                   double horizon, int substeps, double j_max) {
  assert(horizon > 0.0 && substeps >= 2);
  if (norm(jerk) > j_max + kLimitTol) {
    throw JerkExceedsLimit("primitive jerk norm exceeds j_max");
  }
  MotionPrimitive prim;
  prim.jerk = jerk;
  prim.horizon = horizon;
  prim.samples.reserve(static_cast<std::size_t>(substeps) + 1);
  for (int k = 0; k <= substeps; ++k) {
    prim.samples.push_back(
        propagate_constant_jerk(x0, jerk, horizon * k / substeps));
  }
  return prim;
}

MpcResult select_primitive_mpc(const FullState& x0, const VoronoiCell& cell,
                               Point2 centroid, const DynamicLimits& limits,
                               const MpcWeights& weights, double horizon,
                               int substeps) {
  if (!point_in_convex(cell.polygon, x0.p, 1e-9)) {
    throw NoFeasiblePrimitive("start position outside the cell polygon");
  }
  const double T = horizon;
  const double J = limits.j_max;

  std::vector<Vec2> jerks;
  jerks.reserve(27);
  const double levels[5] = {-J, -J / 2.0, 0.0, J / 2.0, J};
  for (double jx : levels) {
    for (double jy : levels) {
      jerks.push_back(clamp_norm({jx, jy}, J));
    }
  }
  // Seeded toward the centroid: jerk landing a zero-initial-rate endpoint on
  // the target, then norm-clamped.
  jerks.push_back(clamp_norm(6.0 / (T * T * T) * (centroid - x0.p), J));
  // Maximal braking toward zero end velocity; always the last candidate.
  jerks.push_back(clamp_norm(-2.0 / (T * T) * (x0.v + T * x0.a), J));

  Candidate best;
  best.cost = std::numeric_limits<double>::infinity();
  Candidate braking;
  for (std::size_t idx = 0; idx < jerks.size(); ++idx) {
    MotionPrimitive prim = generate_primitive(x0, jerks[idx], T, substeps, J);
    Candidate cand;
    cand.cost = primitive_cost(prim, centroid, weights);
    cand.feasible =
        within_limits(prim, limits) && path_in_polygon(x0, jerks[idx], T, cell.polygon);
    cand.primitive = std::move(prim);
    const bool is_braking = idx + 1 == jerks.size();
    if (cand.feasible && cand.cost < best.cost) best = cand;
    if (is_braking) braking = std::move(cand);
  }
  if (best.cost < std::numeric_limits<double>::infinity()) {
    return {std::move(best.primitive), best.cost, true};
  }
  return {std::move(braking.primitive), braking.cost, false};
}

FullState step_triple_integrator(const FullState& x0, const MotionPrimitive& prim,
                                 double dt, const DynamicLimits& limits) {
  assert(dt <= prim.horizon + kLimitTol);
  FullState s = propagate_constant_jerk(x0, prim.jerk, dt);
  s.v = clamp_norm(s.v, limits.v_max);
  s.a = clamp_norm(s.a, limits.a_max);
  return s;
}

}  // namespace pursuit
