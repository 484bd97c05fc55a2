#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pursuit/scenario.hpp"

namespace pursuit {

enum class Phase { Encircle, Capture };

enum class Outcome { Captured, Timeout, Escaped, Collision };

struct TickSnapshot {
  double t = 0.0;
  std::vector<FullState> pursuers;
  FullState evader;
  BoundingRegion region;
  std::vector<std::uint8_t> cell_feasible;  // per pursuer
  std::uint8_t evader_cell_feasible = 1;
  Phase phase = Phase::Encircle;
  double d_e = 0.0;
  double d_c = 0.0;
};

using SimTrace = std::vector<TickSnapshot>;

struct SimResult {
  Outcome outcome = Outcome::Timeout;
  std::optional<double> t_e;  // first encirclement time, s
  std::optional<double> t_c;  // capture time, s
  double d_mo = 0.0;          // min pursuer-obstacle distance over the run, m
  double d_mp = 0.0;          // min pursuer-pursuer distance over the run, m
  int violation_ticks = 0;    // ticks with a pairwise or obstacle violation
  int safety_events = 0;      // cell fallbacks (unbuffered rebuild, hold, ...)
  Scenario scenario;          // the materialized scenario that actually ran
  SimTrace trace;
};

struct SafetyMetrics {
  double d_mo = 0.0;
  double d_mp = 0.0;
};

// Minima over every tick of the per-tick pursuer-obstacle and
// pursuer-pursuer distances; +inf sentinels when there is nothing to measure.
SafetyMetrics compute_safety_metrics(const SimTrace& trace,
                                     std::span<const Obstacle> obstacles);

// Materializes the forest layout of `base` (obstacles plus agent starts)
// deterministically from the seed. Throws PlacementFailed after 10000
// rejected samples.
Scenario generate_forest_scenario(const Scenario& base, std::uint64_t seed);

// Runs one deterministic simulation. Scenarios carrying forest parameters are
// materialized from scenario.seed first. Throws InvalidScenario when the
// scenario is inconsistent.
SimResult run_simulation(const Scenario& scenario,
                         PursuitPolicy policy = PursuitPolicy::OaEcbvc);

struct TrialResult {
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::Timeout;
  std::optional<double> t_e;
  std::optional<double> t_c;
  double d_mo = 0.0;
  double d_mp = 0.0;
  int violation_ticks = 0;
  int safety_events = 0;
};

struct BatchStats {
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  // Quantiles of t_c over successful trials; NaN when there were none.
  double t_c_median = 0.0;
  double t_c_q25 = 0.0;
  double t_c_q75 = 0.0;
  // Means over trials with a finite value; +inf when none had one.
  double d_mo_mean = 0.0;
  double d_mp_mean = 0.0;
  int violation_ticks = 0;
  std::vector<TrialResult> per_trial;
};

// Runs `trials` independent simulations with per-trial seeds
// base.seed + trial index (regenerating forest layouts when configured) and
// aggregates. threads > 1 fans trials out; results are identical either way.
BatchStats run_batch(const Scenario& base, int trials, PursuitPolicy policy,
                     int threads = 1);

}  // namespace pursuit
