#include "pursuit/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <vector>

#include "pursuit/errors.hpp"
#include "pursuit/rng.hpp"

namespace pursuit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSafetyTol = 1e-9;
constexpr int kPlacementBudget = 10000;

std::vector<Point2> positions_of(const std::vector<FullState>& states) {
  std::vector<Point2> out;
  out.reserve(states.size());
  for (const FullState& s : states) out.push_back(s.p);
  return out;
}

struct TickSafety {
  double min_obstacle = kInf;       // min over pursuers/obstacles of d_io
  double min_pair = kInf;           // min over pursuer pairs of d_ij
  bool obstacle_violation = false;  // d_io <= r_i
  bool pair_violation = false;      // d_ij <= r_i + r_j
};

TickSafety tick_safety(std::span<const Point2> pursuers,
                       std::span<const double> radii,
                       std::span<const Obstacle> obstacles) {
  TickSafety out;
  for (std::size_t i = 0; i < pursuers.size(); ++i) {
    for (const Obstacle& obs : obstacles) {
      const double d = dist_point_convex(pursuers[i], obs.hull);
      out.min_obstacle = std::min(out.min_obstacle, d);
      if (d <= radii[i] - kSafetyTol) out.obstacle_violation = true;
    }
    for (std::size_t j = i + 1; j < pursuers.size(); ++j) {
      const double d = distance(pursuers[i], pursuers[j]);
      out.min_pair = std::min(out.min_pair, d);
      if (d <= radii[i] + radii[j] - kSafetyTol) out.pair_violation = true;
    }
  }
  return out;
}

// Per-axis maxima with each axis clamped below at the capture radius, so a
// degenerate axis (all pursuers aligned with the evader) inflates to r_c
// instead of failing and capture stays geometrically reachable.
BoundingRegion spanning_region(Point2 evader, std::span<const Point2> pursuers,
                               double capture_radius) {
  BoundingRegion r{evader, capture_radius, capture_radius};
  for (const Point2& p : pursuers) {
    r.half_x = std::max(r.half_x, std::abs(p.x - evader.x));
    r.half_y = std::max(r.half_y, std::abs(p.y - evader.y));
  }
  return r;
}

double radius_template(const Scenario& s) {
  return s.pursuer_radii.empty() ? 0.15 : s.pursuer_radii.front();
}

Vec2 clamp_norm(Vec2 v, double max_norm) {
  const double n = norm(v);
  return n > max_norm ? (max_norm / n) * v : v;
}

// Velocity that reaches `target` without overshooting it in one step: the
// step stays on the segment from p to the target, so inside any convex set
// containing both.
Vec2 capped_step_velocity(Point2 p, Point2 target, Vec2 command, double dt) {
  const double d = distance(p, target);
  if (norm(command) * dt > d) return (target - p) / dt;
  return command;
}

struct PursuerDecision {
  bool buffered_ok = true;
  int fallbacks = 0;
  Point2 centroid;
  bool hold = false;
  VoronoiCell cell;
};

// Buffered cell, then the unbuffered rebuild, then hold. Exceptions from
// coincident agents or a robot inside an obstacle also land on hold.
PursuerDecision decide_cell(std::size_t i, std::span<const Point2> pursuers,
                            Point2 evader, std::span<const double> radii,
                            std::span<const Obstacle> obstacles,
                            const BoundingRegion& region) {
  PursuerDecision d;
  const std::vector<double> zeros(radii.size(), 0.0);
  try {
    d.cell = build_pursuer_cell(i, pursuers, evader, radii, obstacles, region);
    if (!d.cell.feasible) {
      d.buffered_ok = false;
      ++d.fallbacks;
      d.cell = build_pursuer_cell(i, pursuers, evader, zeros, obstacles, region);
    }
  } catch (const Error&) {
    d.buffered_ok = false;
    ++d.fallbacks;
    d.hold = true;
    return d;
  }
  if (!d.cell.feasible) {
    ++d.fallbacks;
    d.hold = true;
    return d;
  }
  try {
    d.centroid = polygon_mass_centroid(d.cell.polygon).centroid;
  } catch (const DegeneratePolygon&) {
    ++d.fallbacks;
    d.hold = true;
  }
  return d;
}

MotionPrimitive braking_primitive(const FullState& x, const DynamicLimits& lim,
                                  double horizon, int substeps) {
  const Vec2 jerk =
      clamp_norm(-2.0 / (horizon * horizon) * (x.v + horizon * x.a), lim.j_max);
  return generate_primitive(x, jerk, horizon, substeps, lim.j_max);
}

}  // namespace

SafetyMetrics compute_safety_metrics(const SimTrace& trace,
                                     std::span<const Obstacle> obstacles) {
  SafetyMetrics m{kInf, kInf};
  for (const TickSnapshot& snap : trace) {
    const std::vector<Point2> pos = positions_of(snap.pursuers);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      for (const Obstacle& obs : obstacles) {
        m.d_mo = std::min(m.d_mo, dist_point_convex(pos[i], obs.hull));
      }
      for (std::size_t j = i + 1; j < pos.size(); ++j) {
        m.d_mp = std::min(m.d_mp, distance(pos[i], pos[j]));
      }
    }
  }
  return m;
}

Scenario generate_forest_scenario(const Scenario& base, std::uint64_t seed) {
  if (!base.forest) throw InvalidScenario("scenario has no forest parameters");
  validate_scenario(base);
  const ForestParams& f = *base.forest;
  Rng rng(seed);
  Scenario out = base;
  out.forest.reset();
  out.seed = seed;
  out.obstacles.clear();
  out.pursuer_starts.clear();
  const double r_template = radius_template(base);
  out.pursuer_radii.assign(static_cast<std::size_t>(f.pursuer_count), r_template);

  int rejected = 0;
  auto budget = [&] {
    if (++rejected > kPlacementBudget) {
      throw PlacementFailed("forest placement exceeded 10000 rejections");
    }
  };

  while (static_cast<int>(out.obstacles.size()) < f.obstacle_count) {
    const int sides = rng.uniform_int(3, 8);
    const double radius = rng.uniform(f.obstacle_radius_min, f.obstacle_radius_max);
    const double rot = rng.uniform(0.0, 2.0 * M_PI);
    const double span = f.area_half - radius;
    const Point2 c{rng.uniform(f.center.x - span, f.center.x + span),
                   rng.uniform(f.center.y - span, f.center.y + span)};
    Obstacle obs{make_regular_polygon(c, radius, sides, rot)};
    bool ok = dist_point_convex(base.evader_start, obs.hull) >
              base.evader_radius + 0.2;
    for (const Obstacle& other : out.obstacles) {
      if (!ok) break;
      ok = polytope_min_distance(obs.hull, other.hull) >= f.min_clearance;
    }
    if (!ok) {
      budget();
      continue;
    }
    out.obstacles.push_back(std::move(obs));
  }

  while (out.pursuer_starts.size() <
         static_cast<std::size_t>(f.pursuer_count)) {
    Point2 p;
    if (f.spawn_mode == SpawnMode::Box) {
      p = {rng.uniform(f.spawn_box_lo.x, f.spawn_box_hi.x),
           rng.uniform(f.spawn_box_lo.y, f.spawn_box_hi.y)};
    } else {
      const double th = rng.uniform(0.0, 2.0 * M_PI);
      const double rad = rng.uniform(f.spawn_ring_min, f.spawn_ring_max);
      p = f.center + rad * Vec2{std::cos(th), std::sin(th)};
    }
    bool ok = distance(p, base.evader_start) > base.capture_radius + 0.2;
    for (const Point2& q : out.pursuer_starts) {
      if (!ok) break;
      ok = distance(p, q) > 2.0 * r_template + 0.1;
    }
    for (const Obstacle& obs : out.obstacles) {
      if (!ok) break;
      ok = dist_point_convex(p, obs.hull) > r_template + 0.1;
    }
    if (!ok) {
      budget();
      continue;
    }
    out.pursuer_starts.push_back(p);
  }

  validate_scenario(out);
  return out;
}

SimResult run_simulation(const Scenario& scenario, PursuitPolicy policy) {
  Scenario materialized;
  const Scenario* sp = &scenario;
  if (scenario.forest) {
    materialized = generate_forest_scenario(scenario, scenario.seed);
    sp = &materialized;
  }
  const Scenario& s = *sp;
  validate_scenario(s);
  if (policy == PursuitPolicy::Greedy && s.dynamics == DynamicsMode::Triple) {
    throw InvalidScenario("greedy baseline supports single-integrator dynamics only");
  }

  const std::size_t n = s.pursuer_starts.size();
  std::vector<FullState> pursuers(n);
  for (std::size_t i = 0; i < n; ++i) pursuers[i].p = s.pursuer_starts[i];
  FullState evader;
  evader.p = s.evader_start;

  const Point2 arena = s.arena_center.value_or(s.evader_start);
  const double r_c = s.capture_radius;
  const std::vector<Obstacle>& obstacles = s.obstacles;
  const std::vector<Obstacle> no_obstacles;
  std::span<const Obstacle> evader_obstacles =
      s.evader_obstacle_aware ? std::span<const Obstacle>(obstacles)
                              : std::span<const Obstacle>(no_obstacles);

  SimResult res;
  res.scenario = s;
  res.d_mo = kInf;
  res.d_mp = kInf;
  Phase phase = Phase::Encircle;
  double half_x = r_c;
  double half_y = r_c;

  int tick = 0;
  while (true) {
    const double t = tick * s.dt;
    const std::vector<Point2> pos = positions_of(pursuers);
    const EncirclementStatus status = encirclement_status(pos, evader.p, r_c);

    if (phase == Phase::Capture && status.d_e > kEncircleHysteresis) {
      phase = Phase::Encircle;
    }
    if (phase == Phase::Encircle) {
      const BoundingRegion spanning = spanning_region(evader.p, pos, r_c);
      if (status.encircled) {
        phase = Phase::Capture;
        if (!res.t_e) res.t_e = t;
      }
      half_x = spanning.half_x;
      half_y = spanning.half_y;
    }
    const BoundingRegion region{evader.p, half_x, half_y};

    TickSnapshot snap;
    snap.t = t;
    snap.pursuers = pursuers;
    snap.evader = evader;
    snap.region = region;
    snap.phase = phase;
    snap.d_e = status.d_e;
    snap.d_c = status.d_c;
    snap.cell_feasible.assign(n, 1);
    try {
      snap.evader_cell_feasible =
          build_evader_cell(pos, evader.p, obstacles, region).feasible ? 1 : 0;
    } catch (const Error&) {
      snap.evader_cell_feasible = 0;
    }

    std::vector<PursuerDecision> decisions;
    if (policy == PursuitPolicy::OaEcbvc) {
      decisions.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        decisions.push_back(
            decide_cell(i, pos, evader.p, s.pursuer_radii, obstacles, region));
        res.safety_events += decisions.back().fallbacks;
        snap.cell_feasible[i] = decisions.back().buffered_ok ? 1 : 0;
      }
    }

    const TickSafety safety = tick_safety(pos, s.pursuer_radii, obstacles);
    res.d_mo = std::min(res.d_mo, safety.min_obstacle);
    res.d_mp = std::min(res.d_mp, safety.min_pair);
    if (safety.obstacle_violation || safety.pair_violation) ++res.violation_ticks;

    res.trace.push_back(std::move(snap));

    if (status.captured) {
      res.t_c = t;
      res.outcome = Outcome::Captured;
      break;
    }
    if (safety.obstacle_violation) {
      res.outcome = Outcome::Collision;
      break;
    }
    if (s.escape_range > 0.0 &&
        (std::abs(evader.p.x - arena.x) > 0.5 * s.escape_range ||
         std::abs(evader.p.y - arena.y) > 0.5 * s.escape_range)) {
      res.outcome = Outcome::Escaped;
      break;
    }
    if (t >= s.max_time - 1e-9) {
      res.outcome = Outcome::Timeout;
      break;
    }

    // Commands from the shared snapshot, then one synchronous update.
    std::vector<FullState> next(n);
    std::vector<double> displacements(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const FullState& x = pursuers[i];
      FullState nx = x;
      if (policy == PursuitPolicy::Greedy) {
        const Vec2 cmd = greedy_baseline_command(x.p, evader.p, s.pursuer_limits.v_max);
        nx.v = capped_step_velocity(x.p, evader.p, cmd, s.dt);
        nx.p = step_single_integrator(x.p, nx.v, s.dt);
      } else if (decisions[i].hold) {
        if (s.dynamics == DynamicsMode::Single) {
          nx.v = {0.0, 0.0};
        } else {
          const MotionPrimitive brake =
              braking_primitive(x, s.pursuer_limits, s.dt, s.mpc_substeps);
          nx = step_triple_integrator(x, brake, s.dt, s.pursuer_limits);
        }
      } else if (s.dynamics == DynamicsMode::Single) {
        const Vec2 cmd = pursuer_velocity_command(x.p, decisions[i].centroid,
                                                  s.pursuer_limits.v_max);
        nx.v = capped_step_velocity(x.p, decisions[i].centroid, cmd, s.dt);
        nx.p = step_single_integrator(x.p, nx.v, s.dt);
      } else {
        VoronoiCell cell = std::move(decisions[i].cell);
        if (!point_in_convex(cell.polygon, x.p, 1e-9)) {
          // The shrinking region can leave a pursuer outside its cell; the
          // safety half-planes still contain it, so rebuild with the region
          // grown to cover the current position.
          ++res.safety_events;
          BoundingRegion grown = region;
          grown.half_x = std::max(grown.half_x, std::abs(x.p.x - region.center.x) + 0.5);
          grown.half_y = std::max(grown.half_y, std::abs(x.p.y - region.center.y) + 0.5);
          PursuerDecision retry =
              decide_cell(i, pos, evader.p, s.pursuer_radii, obstacles, grown);
          res.safety_events += retry.fallbacks;
          if (!retry.hold && point_in_convex(retry.cell.polygon, x.p, 1e-9)) {
            cell = std::move(retry.cell);
          } else {
            cell.feasible = false;
          }
        }
        if (cell.feasible) {
          try {
            const MpcResult mpc = select_primitive_mpc(
                x, cell, decisions[i].centroid, s.pursuer_limits, s.mpc_weights,
                s.dt, s.mpc_substeps);
            if (!mpc.feasible) ++res.safety_events;
            nx = step_triple_integrator(x, mpc.primitive, s.dt, s.pursuer_limits);
          } catch (const NoFeasiblePrimitive&) {
            ++res.safety_events;
            const MotionPrimitive brake =
                braking_primitive(x, s.pursuer_limits, s.dt, s.mpc_substeps);
            nx = step_triple_integrator(x, brake, s.dt, s.pursuer_limits);
          }
        } else {
          ++res.safety_events;
          const MotionPrimitive brake =
              braking_primitive(x, s.pursuer_limits, s.dt, s.mpc_substeps);
          nx = step_triple_integrator(x, brake, s.dt, s.pursuer_limits);
        }
      }
      displacements[i] = distance(nx.p, x.p);
      next[i] = nx;
    }

    FullState next_evader = evader;
    if (s.evader_policy == EvaderPolicy::Scripted) {
      next_evader.v = clamp_norm(s.evader_scripted_velocity, s.evader_limits.v_max);
      next_evader.p = step_single_integrator(evader.p, next_evader.v, s.dt);
    } else {
      const ConvexPolygon escape =
          evader_escape_cell(evader.p, pos, evader_obstacles, s.evader_work_radius);
      Point2 target = evader.p;
      if (!escape.degenerate()) {
        try {
          target = polygon_mass_centroid(escape).centroid;
        } catch (const DegeneratePolygon&) {
        }
      }
      if (s.dynamics == DynamicsMode::Single) {
        const Vec2 cmd =
            pursuer_velocity_command(evader.p, target, s.evader_limits.v_max);
        next_evader.v = capped_step_velocity(evader.p, target, cmd, s.dt);
        next_evader.p = step_single_integrator(evader.p, next_evader.v, s.dt);
      } else {
        VoronoiCell cell;
        cell.polygon = escape;
        cell.feasible = !escape.empty();
        bool stepped = false;
        if (cell.feasible && point_in_convex(cell.polygon, evader.p, 1e-9)) {
          try {
            const MpcResult mpc =
                select_primitive_mpc(evader, cell, target, s.evader_limits,
                                     s.mpc_weights, s.dt, s.mpc_substeps);
            next_evader =
                step_triple_integrator(evader, mpc.primitive, s.dt, s.evader_limits);
            stepped = true;
          } catch (const NoFeasiblePrimitive&) {
          }
        }
        if (!stepped) {
          const MotionPrimitive brake =
              braking_primitive(evader, s.evader_limits, s.dt, s.mpc_substeps);
          next_evader = step_triple_integrator(evader, brake, s.dt, s.evader_limits);
        }
      }
    }

    pursuers = std::move(next);
    evader = next_evader;

    if (phase == Phase::Capture) {
      const double amount = shrink_amount(s.shrink, displacements, s.dt);
      const BoundingRegion shrunk =
          shrink_region({evader.p, half_x, half_y}, amount, s.shrink.floor);
      half_x = shrunk.half_x;
      half_y = shrunk.half_y;
    }
    ++tick;
  }

  return res;
}

BatchStats run_batch(const Scenario& base, int trials, PursuitPolicy policy,
                     int threads) {
  auto run_trial = [&](int index) {
    Scenario s = base;
    s.seed = base.seed + static_cast<std::uint64_t>(index);
    const SimResult r = run_simulation(s, policy);
    TrialResult t;
    t.seed = s.seed;
    t.outcome = r.outcome;
    t.t_e = r.t_e;
    t.t_c = r.t_c;
    t.d_mo = r.d_mo;
    t.d_mp = r.d_mp;
    t.violation_ticks = r.violation_ticks;
    t.safety_events = r.safety_events;
    return t;
  };

  BatchStats stats;
  stats.trials = trials;
  stats.per_trial.resize(static_cast<std::size_t>(trials));
  if (threads <= 1) {
    for (int i = 0; i < trials; ++i) stats.per_trial[i] = run_trial(i);
  } else {
    std::vector<std::future<void>> futures;
    futures.reserve(static_cast<std::size_t>(threads));
    std::atomic<int> cursor{0};
    for (int w = 0; w < threads; ++w) {
      futures.push_back(std::async(std::launch::async, [&] {
        for (int i = cursor.fetch_add(1); i < trials; i = cursor.fetch_add(1)) {
          stats.per_trial[i] = run_trial(i);
        }
      }));
    }
    for (auto& f : futures) f.get();
  }

  std::vector<double> capture_times;
  double mo_sum = 0.0;
  int mo_count = 0;
  double mp_sum = 0.0;
  int mp_count = 0;
  for (const TrialResult& t : stats.per_trial) {
    if (t.outcome == Outcome::Captured) {
      ++stats.successes;
      capture_times.push_back(*t.t_c);
    }
    if (std::isfinite(t.d_mo)) {
      mo_sum += t.d_mo;
      ++mo_count;
    }
    if (std::isfinite(t.d_mp)) {
      mp_sum += t.d_mp;
      ++mp_count;
    }
    stats.violation_ticks += t.violation_ticks;
  }
  stats.success_rate = trials > 0 ? static_cast<double>(stats.successes) / trials : 0.0;
  stats.d_mo_mean = mo_count > 0 ? mo_sum / mo_count : kInf;
  stats.d_mp_mean = mp_count > 0 ? mp_sum / mp_count : kInf;

  std::sort(capture_times.begin(), capture_times.end());
  auto quantile = [&](double q) {
    if (capture_times.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double pos = q * static_cast<double>(capture_times.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, capture_times.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return capture_times[lo] * (1.0 - frac) + capture_times[hi] * frac;
  };
  stats.t_c_q25 = quantile(0.25);
  stats.t_c_median = quantile(0.5);
  stats.t_c_q75 = quantile(0.75);
  return stats;
}

}  // namespace pursuit
