#include <cmath>
#include <string>

#include "doctest.h"
#include "pursuit/engine.hpp"
#include "pursuit/errors.hpp"
#include "pursuit/scenario_io.hpp"
#include "pursuit/svg_render.hpp"
#include "pursuit/trace_io.hpp"

using namespace pursuit;

namespace {

const char* kPaperDefaults = R"(# paper-style defaults
dynamics = single
dt_s = 0.1
max_time_s = 60
capture_radius_m = 1.0
pursuer_radius_m = 0.15
evader_radius_m = 0.15
pursuer_vmax_mps = 1.0
evader_vmax_mps = 0.9
evader_policy = voronoi-escape
evader_start_m = [0, 0]
pursuer_start_m = [4, 1]
pursuer_start_m = [-3, 2]
pursuer_start_m = [1, -4]
)";

const char* kTunnel = R"(# narrow-space parameters
dt_s = 0.25
capture_radius_m = 1.0
pursuer_radius_m = 0.3
evader_radius_m = 0.3
pursuer_vmax_mps = 0.3
evader_vmax_mps = 0.2
evader_start_m = [6, 0]
pursuer_start_m = [-6, 1.2]
pursuer_start_m = [-6, 0.4]
pursuer_start_m = [-6, -0.4]
pursuer_start_m = [-6, -1.2]
obstacle_polygon_m = [-8, 1.8, 8, 1.8, 8, 2.8, -8, 2.8]
obstacle_polygon_m = [-8, -2.8, 8, -2.8, 8, -1.8, -8, -1.8]
)";

size_t count_lines(const std::string& s, const std::string& needle) {
  size_t count = 0;
  size_t at = 0;
  while ((at = s.find(needle, at)) != std::string::npos) {
    ++count;
    at += needle.size();
  }
  return count;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("paper-defaults document parses") {
  const Scenario s = parse_scenario(kPaperDefaults);
  CHECK(s.dt == doctest::Approx(0.1));
  CHECK(s.capture_radius == doctest::Approx(1.0));
  CHECK(s.pursuer_limits.v_max == doctest::Approx(1.0));
  CHECK(s.evader_limits.v_max == doctest::Approx(0.9));
  CHECK(s.pursuer_starts.size() == 3);
  CHECK(s.pursuer_radii.size() == 3);
  CHECK(s.pursuer_radii[1] == doctest::Approx(0.15));
  CHECK(s.shrink.floor == doctest::Approx(1.0));  // defaults to r_c
}

TEST_CASE("tunnel parameters parse") {
  const Scenario s = parse_scenario(kTunnel);
  CHECK(s.dt == doctest::Approx(0.25));
  CHECK(s.pursuer_limits.v_max == doctest::Approx(0.3));
  CHECK(s.evader_limits.v_max == doctest::Approx(0.2));
  CHECK(s.pursuer_radii[0] == doctest::Approx(0.3));
  CHECK(s.obstacles.size() == 2);
}

TEST_CASE("overlapping starts name the offending pair") {
  const std::string text = std::string(kPaperDefaults) +
                           "pursuer_start_m = [4, 1.01]\n";
  CHECK_THROWS_WITH_AS(parse_scenario(text),
                       doctest::Contains("pursuer 0 and pursuer 3"),
                       InvalidScenario);
}

TEST_CASE("unknown keys are rejected with their line") {
  CHECK_THROWS_WITH_AS(parse_scenario("evader_start_m = [0,0]\nspeed = 3\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_AS(parse_scenario("dt_s = fast\nevader_start_m = [0,0]\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_scenario("dt_s = 0.1\ndt_s = 0.2\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("evader_start_m = [1, 2\n"), ParseError);
}

TEST_CASE("non-convex obstacles are rejected") {
  const std::string text =
      "evader_start_m = [0, 0]\n"
      "obstacle_polygon_m = [2, 0, 4, 0, 4, 4, 3, 1, 2, 4]\n";
  CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("not convex"),
                       InvalidScenario);
}

TEST_CASE("circle obstacles expand to regular polygons") {
  const Scenario s = parse_scenario(
      "evader_start_m = [0, 0]\nobstacle_circle_m = [5, 5, 0.5]\n"
      "circle_segments = 12\n");
  REQUIRE(s.obstacles.size() == 1);
  CHECK(s.obstacles[0].hull.size() == 12);
  for (const Point2& v : s.obstacles[0].hull.vertices) {
    CHECK(distance(v, {5.0, 5.0}) == doctest::Approx(0.5));
  }
}

TEST_CASE("parse-serialize-parse is the identity") {
  for (const char* text : {kPaperDefaults, kTunnel}) {
    const Scenario once = parse_scenario(text);
    const std::string canon = serialize_scenario(once);
    const Scenario twice = parse_scenario(canon);
    CHECK(serialize_scenario(twice) == canon);
  }

  // and for a forest configuration
  const char* forest =
      "evader_start_m = [10, 10]\nforest_pursuer_count = 4\n"
      "forest_obstacle_count = 16\nforest_area_half_m = 10\n"
      "forest_spawn_box_m = [10, 10, 15, 15]\nescape_range_m = 19.8\n";
  const Scenario once = parse_scenario(forest);
  REQUIRE(once.forest.has_value());
  CHECK(once.forest->min_clearance == doctest::Approx(0.6));  // 4 * r_i
  const std::string canon = serialize_scenario(once);
  CHECK(serialize_scenario(parse_scenario(canon)) == canon);
}

TEST_CASE("forest keys conflict with explicit layouts") {
  CHECK_THROWS_AS(
      parse_scenario("evader_start_m = [0,0]\npursuer_start_m = [1,1]\n"
                     "forest_pursuer_count = 3\n"),
      InvalidScenario);
}

TEST_CASE("trace csv shape and determinism") {
  Scenario s;
  s.pursuer_starts = {{3.0, 0.0}, {-3.0, 1.0}};
  s.pursuer_radii = {0.15, 0.15};
  s.evader_start = {0.0, 0.0};
  s.max_time = 2.0;
  const SimResult r = run_simulation(s);

  const std::string csv = trace_csv(r);
  CHECK(csv.rfind("time_s,agent_id,role,x_m,y_m,vx,vy,phase,cell_feasible,d_e,d_c\n",
                  0) == 0);
  // one row per agent per tick, plus the header
  CHECK(count_lines(csv, "\n") == r.trace.size() * 3 + 1);
  CHECK(count_lines(csv, "evader") == r.trace.size());
  CHECK(trace_csv(run_simulation(s)) == csv);

  SimResult empty;
  empty.scenario = s;
  CHECK(trace_csv(empty) ==
        "time_s,agent_id,role,x_m,y_m,vx,vy,phase,cell_feasible,d_e,d_c\n");
}

TEST_CASE("svg output is well formed and deterministic") {
  Scenario s;
  s.pursuer_starts = {{4.0, 0.0}, {-4.0, 1.0}, {0.0, 4.0}};
  s.pursuer_radii = {0.15, 0.15, 0.15};
  s.evader_start = {0.0, 0.0};
  s.obstacles.push_back({make_rect({1.0, 1.0}, {2.0, 2.0})});
  s.obstacles.push_back({make_regular_polygon({-2.0, -2.0}, 0.5, 6)});
  s.max_time = 3.0;
  const SimResult r = run_simulation(s);

  RenderOptions opts;
  opts.show_hull = true;
  opts.cells_at_tick = 0;
  const std::string svg = render_svg(r, opts);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") !=
        std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  // two obstacle polygons, three pursuer cells and the evader cell
  CHECK(count_lines(svg, "fill=\"#9e9e9e\"") == s.obstacles.size());
  CHECK(count_lines(svg, "fill=\"#1f77b4\" fill-opacity") == 3);
  CHECK(count_lines(svg, "<polyline") == 4);  // 3 pursuers + evader
  CHECK(render_svg(r, opts) == svg);

  SimResult empty;
  empty.scenario = s;
  const std::string blank = render_svg(empty, RenderOptions{});
  CHECK(blank.find("<rect") != std::string::npos);
  CHECK(blank.find("<polyline") == std::string::npos);
}

TEST_SUITE_END();
