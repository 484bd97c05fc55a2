#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pursuit/cells.hpp"
#include "pursuit/dynamics.hpp"
#include "pursuit/geometry.hpp"
#include "pursuit/strategy.hpp"

namespace pursuit {

enum class DynamicsMode { Single, Triple };
enum class EvaderPolicy { VoronoiEscape, Scripted };
enum class PursuitPolicy { OaEcbvc, Greedy };
enum class SpawnMode { Box, Ring };

// Random layout generation: regular k-gon obstacles (k in [3, 8], circumradius
// in the given range, random rotation) rejection-sampled for mutual clearance,
// and agent starts sampled from a box or a ring around the center.
struct ForestParams {
  Point2 center{0.0, 0.0};
  double area_half = 10.0;          // obstacle centers stay inside this box, m
  int obstacle_count = 16;
  double obstacle_radius_min = 0.3;  // m
  double obstacle_radius_max = 0.8;  // m
  double min_clearance = 0.6;        // m, between obstacles; default 4 * r_i
  int pursuer_count = 4;
  SpawnMode spawn_mode = SpawnMode::Box;
  Point2 spawn_box_lo{0.0, 0.0};
  Point2 spawn_box_hi{5.0, 5.0};
  double spawn_ring_min = 4.0;  // m, ring mode
  double spawn_ring_max = 8.0;  // m
};

struct Scenario {
  std::vector<Point2> pursuer_starts;
  Point2 evader_start{0.0, 0.0};
  std::vector<Obstacle> obstacles;

  std::vector<double> pursuer_radii;  // r_i, m
  double evader_radius = 0.15;        // r_e, m
  double capture_radius = 1.0;        // r_c, m

  DynamicLimits pursuer_limits{1.0, 2.0, 5.0};
  DynamicLimits evader_limits{0.9, 2.0, 5.0};

  double dt = 0.1;        // replanning step, s
  double max_time = 60.0; // s
  DynamicsMode dynamics = DynamicsMode::Single;

  ShrinkPolicy shrink{ShrinkMode::MinDisplacement, 1.0, 1.0};

  EvaderPolicy evader_policy = EvaderPolicy::VoronoiEscape;
  Vec2 evader_scripted_velocity{0.0, 0.0};
  double evader_work_radius = 50.0;  // m, escape-cell clip half-width
  bool evader_obstacle_aware = false;

  MpcWeights mpc_weights{1e-6, 1.0};
  int mpc_substeps = 10;

  // When > 0, the run fails ("escaped") once the evader leaves the square of
  // this side length centered on arena_center (default: the evader start).
  double escape_range = 0.0;  // m
  std::optional<Point2> arena_center;

  std::uint64_t seed = 0;

  // When set, run/batch regenerate obstacles and starts from the seed.
  std::optional<ForestParams> forest;

  std::size_t pursuer_count() const {
    return forest ? static_cast<std::size_t>(forest->pursuer_count)
                  : pursuer_starts.size();
  }
};

// Checks every scenario invariant (separation of starts, clearance from
// obstacles, radii/timing positivity, obstacle convexity); throws
// InvalidScenario naming the violated invariant. Scenarios with forest
// parameters are checked minus the layout fields, which are generated later.
void validate_scenario(const Scenario& s);

}  // namespace pursuit
