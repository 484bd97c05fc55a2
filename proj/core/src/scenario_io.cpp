#include "pursuit/scenario_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "pursuit/errors.hpp"

namespace pursuit {

namespace {

struct RawValue {
  int line = 0;
  std::string scalar;               // empty when array
  std::vector<double> array;
  bool is_array = false;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s, int line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) {
    fail(line, "expected a finite number, got '" + s + "'");
  }
  return v;
}

// The known keys; repeatable ones collect multiple values.
const std::set<std::string> kRepeatable = {
    "pursuer_start_m", "obstacle_polygon_m", "obstacle_circle_m"};

const std::set<std::string> kKnownKeys = {
    "dynamics", "dt_s", "max_time_s", "capture_radius_m", "pursuer_radius_m",
    "pursuer_radii_m", "evader_radius_m", "pursuer_vmax_mps",
    "pursuer_amax_mps2", "pursuer_jmax_mps3", "evader_vmax_mps",
    "evader_amax_mps2", "evader_jmax_mps3", "evader_policy",
    "evader_scripted_velocity_mps", "evader_work_radius_m",
    "evader_obstacle_aware", "shrink_mode", "shrink_rate_mps", "shrink_floor_m",
    "mpc_lambda_u", "mpc_lambda_p", "mpc_substeps", "escape_range_m",
    "arena_center_m", "seed", "evader_start_m", "pursuer_start_m",
    "obstacle_polygon_m", "obstacle_circle_m", "circle_segments",
    "forest_center_m", "forest_area_half_m", "forest_obstacle_count",
    "forest_obstacle_radius_m", "forest_min_clearance_m",
    "forest_pursuer_count", "forest_spawn", "forest_spawn_box_m",
    "forest_spawn_ring_m"};

class Document {
 public:
  explicit Document(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      const std::string stripped = trim(raw);
      if (stripped.empty()) continue;
      const std::size_t eq = stripped.find('=');
      if (eq == std::string::npos) fail(line, "expected 'key = value'");
      const std::string key = trim(stripped.substr(0, eq));
      const std::string value = trim(stripped.substr(eq + 1));
      if (key.empty()) fail(line, "missing key before '='");
      if (value.empty()) fail(line, "missing value for key '" + key + "'");
      if (!kKnownKeys.count(key)) fail(line, "unknown key '" + key + "'");

      RawValue rv;
      rv.line = line;
      if (value.front() == '[') {
        if (value.back() != ']') fail(line, "unterminated array for '" + key + "'");
        rv.is_array = true;
        std::string body = value.substr(1, value.size() - 2);
        std::istringstream items(body);
        std::string item;
        while (std::getline(items, item, ',')) {
          const std::string t = trim(item);
          if (t.empty()) fail(line, "empty array element for '" + key + "'");
          rv.array.push_back(parse_number(t, line));
        }
        if (rv.array.empty()) fail(line, "empty array for '" + key + "'");
      } else {
        rv.scalar = value;
      }

      if (kRepeatable.count(key)) {
        repeated_[key].push_back(rv);
      } else {
        if (values_.count(key)) {
          fail(line, "duplicate key '" + key + "' (first on line " +
                         std::to_string(values_[key].line) + ")");
        }
        values_[key] = rv;
      }
      seen_.insert(key);
    }
  }

  bool has(const std::string& key) const { return seen_.count(key) > 0; }

  double number(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.is_array) fail(it->second.line, "'" + key + "' must be a scalar");
    return parse_number(it->second.scalar, it->second.line);
  }

  long long integer(const std::string& key, long long fallback) const {
    const double v = number(key, static_cast<double>(fallback));
    if (v != std::floor(v)) {
      fail(values_.at(key).line, "'" + key + "' must be an integer");
    }
    return static_cast<long long>(v);
  }

  std::string word(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.is_array) fail(it->second.line, "'" + key + "' must be a word");
    return it->second.scalar;
  }

  bool boolean(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.scalar == "true") return true;
    if (it->second.scalar == "false") return false;
    fail(it->second.line, "'" + key + "' must be true or false");
  }

  std::vector<double> array(const std::string& key, std::size_t arity) const {
    auto it = values_.find(key);
    if (it == values_.end()) return {};
    if (!it->second.is_array || (arity > 0 && it->second.array.size() != arity)) {
      fail(it->second.line, "'" + key + "' must be an array of " +
                                std::to_string(arity) + " numbers");
    }
    return it->second.array;
  }

  const std::vector<RawValue>& repeated(const std::string& key) const {
    static const std::vector<RawValue> none;
    auto it = repeated_.find(key);
    return it == repeated_.end() ? none : it->second;
  }

 private:
  std::map<std::string, RawValue> values_;
  std::map<std::string, std::vector<RawValue>> repeated_;
  std::set<std::string> seen_;
};

Point2 as_point(const std::vector<double>& a) { return {a[0], a[1]}; }

}  // namespace

Scenario parse_scenario(const std::string& text) {
  const Document doc(text);
  Scenario s;

  const std::string dyn = doc.word("dynamics", "single");
  if (dyn == "single") {
    s.dynamics = DynamicsMode::Single;
  } else if (dyn == "triple") {
    s.dynamics = DynamicsMode::Triple;
  } else {
    throw InvalidScenario("dynamics must be 'single' or 'triple', got '" + dyn + "'");
  }

  s.dt = doc.number("dt_s", 0.1);
  s.max_time = doc.number("max_time_s", 60.0);
  s.capture_radius = doc.number("capture_radius_m", 1.0);
  s.evader_radius = doc.number("evader_radius_m", 0.15);
  s.pursuer_limits.v_max = doc.number("pursuer_vmax_mps", 1.0);
  s.pursuer_limits.a_max = doc.number("pursuer_amax_mps2", 2.0);
  s.pursuer_limits.j_max = doc.number("pursuer_jmax_mps3", 5.0);
  s.evader_limits.v_max = doc.number("evader_vmax_mps", 0.9);
  s.evader_limits.a_max = doc.number("evader_amax_mps2", 2.0);
  s.evader_limits.j_max = doc.number("evader_jmax_mps3", 5.0);

  const std::string policy = doc.word("evader_policy", "voronoi-escape");
  if (policy == "voronoi-escape") {
    s.evader_policy = EvaderPolicy::VoronoiEscape;
  } else if (policy == "scripted") {
    s.evader_policy = EvaderPolicy::Scripted;
  } else {
    throw InvalidScenario("evader_policy must be 'voronoi-escape' or 'scripted'");
  }
  if (doc.has("evader_scripted_velocity_mps")) {
    s.evader_scripted_velocity = as_point(doc.array("evader_scripted_velocity_mps", 2));
  }
  s.evader_work_radius = doc.number("evader_work_radius_m", 50.0);
  s.evader_obstacle_aware = doc.boolean("evader_obstacle_aware", false);

  const std::string shrink = doc.word("shrink_mode", "min-displacement");
  if (shrink == "min-displacement") {
    s.shrink.mode = ShrinkMode::MinDisplacement;
  } else if (shrink == "fixed-rate") {
    s.shrink.mode = ShrinkMode::FixedRate;
  } else {
    throw InvalidScenario("shrink_mode must be 'min-displacement' or 'fixed-rate'");
  }
  s.shrink.rate = doc.number("shrink_rate_mps", 1.0);
  s.shrink.floor = doc.number("shrink_floor_m", s.capture_radius);

  s.mpc_weights.lambda_u = doc.number("mpc_lambda_u", 1e-6);
  s.mpc_weights.lambda_p = doc.number("mpc_lambda_p", 1.0);
  s.mpc_substeps = static_cast<int>(doc.integer("mpc_substeps", 10));

  s.escape_range = doc.number("escape_range_m", 0.0);
  if (doc.has("arena_center_m")) {
    s.arena_center = as_point(doc.array("arena_center_m", 2));
  }
  s.seed = static_cast<std::uint64_t>(doc.integer("seed", 0));

  if (doc.has("evader_start_m")) {
    s.evader_start = as_point(doc.array("evader_start_m", 2));
  }

  const double radius_default = doc.number("pursuer_radius_m", 0.15);

  const bool has_forest =
      doc.has("forest_pursuer_count") || doc.has("forest_obstacle_count") ||
      doc.has("forest_area_half_m") || doc.has("forest_spawn") ||
      doc.has("forest_center_m") || doc.has("forest_obstacle_radius_m") ||
      doc.has("forest_min_clearance_m") || doc.has("forest_spawn_box_m") ||
      doc.has("forest_spawn_ring_m");

  if (has_forest) {
    if (!doc.repeated("pursuer_start_m").empty() ||
        !doc.repeated("obstacle_polygon_m").empty() ||
        !doc.repeated("obstacle_circle_m").empty()) {
      throw InvalidScenario(
          "forest generation and an explicit layout cannot be combined");
    }
    ForestParams f;
    f.center = doc.has("forest_center_m") ? as_point(doc.array("forest_center_m", 2))
                                          : s.evader_start;
    f.area_half = doc.number("forest_area_half_m", 10.0);
    f.obstacle_count = static_cast<int>(doc.integer("forest_obstacle_count", 16));
    if (doc.has("forest_obstacle_radius_m")) {
      const auto r = doc.array("forest_obstacle_radius_m", 2);
      f.obstacle_radius_min = r[0];
      f.obstacle_radius_max = r[1];
    }
    f.min_clearance = doc.number("forest_min_clearance_m", 4.0 * radius_default);
    f.pursuer_count = static_cast<int>(doc.integer("forest_pursuer_count", 4));
    const std::string spawn = doc.word("forest_spawn", "box");
    if (spawn == "box") {
      f.spawn_mode = SpawnMode::Box;
    } else if (spawn == "ring") {
      f.spawn_mode = SpawnMode::Ring;
    } else {
      throw InvalidScenario("forest_spawn must be 'box' or 'ring'");
    }
    if (doc.has("forest_spawn_box_m")) {
      const auto b = doc.array("forest_spawn_box_m", 4);
      f.spawn_box_lo = {b[0], b[1]};
      f.spawn_box_hi = {b[2], b[3]};
    } else {
      f.spawn_box_lo = f.center - Vec2{5.0, 5.0};
      f.spawn_box_hi = f.center + Vec2{5.0, 5.0};
    }
    if (doc.has("forest_spawn_ring_m")) {
      const auto r = doc.array("forest_spawn_ring_m", 2);
      f.spawn_ring_min = r[0];
      f.spawn_ring_max = r[1];
    }
    s.forest = f;
    s.pursuer_radii = {radius_default};
  } else {
    for (const RawValue& rv : doc.repeated("pursuer_start_m")) {
      if (!rv.is_array || rv.array.size() != 2) {
        fail(rv.line, "'pursuer_start_m' must be an array of 2 numbers");
      }
      s.pursuer_starts.push_back(as_point(rv.array));
    }
    if (doc.has("pursuer_radii_m")) {
      s.pursuer_radii = doc.array("pursuer_radii_m", s.pursuer_starts.size());
    } else {
      s.pursuer_radii.assign(s.pursuer_starts.size(), radius_default);
    }

    const int segments = static_cast<int>(doc.integer("circle_segments", 16));
    if (segments < 3) throw InvalidScenario("circle_segments must be at least 3");
    for (const RawValue& rv : doc.repeated("obstacle_polygon_m")) {
      if (!rv.is_array || rv.array.size() < 6 || rv.array.size() % 2 != 0) {
        fail(rv.line,
             "'obstacle_polygon_m' must be a flat array of at least 3 x,y pairs");
      }
      ConvexPolygon poly;
      for (std::size_t k = 0; k + 1 < rv.array.size(); k += 2) {
        poly.vertices.push_back({rv.array[k], rv.array[k + 1]});
      }
      const ConvexPolygon hull = convex_hull(poly.vertices);
      if (hull.size() != poly.size() ||
          std::abs(polygon_area(hull) - std::abs(polygon_area(poly))) > 1e-9) {
        throw InvalidScenario("obstacle polygon on line " +
                              std::to_string(rv.line) + " is not convex");
      }
      s.obstacles.push_back({hull});
    }
    for (const RawValue& rv : doc.repeated("obstacle_circle_m")) {
      if (!rv.is_array || rv.array.size() != 3) {
        fail(rv.line, "'obstacle_circle_m' must be [cx, cy, radius]");
      }
      if (rv.array[2] <= 0.0) fail(rv.line, "circle radius must be positive");
      s.obstacles.push_back(
          {make_regular_polygon({rv.array[0], rv.array[1]}, rv.array[2], segments)});
    }
  }

  validate_scenario(s);
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_pair(Point2 p) { return "[" + fmt(p.x) + ", " + fmt(p.y) + "]"; }

}  // namespace

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "dynamics = " << (s.dynamics == DynamicsMode::Single ? "single" : "triple")
      << "\n";
  out << "dt_s = " << fmt(s.dt) << "\n";
  out << "max_time_s = " << fmt(s.max_time) << "\n";
  out << "capture_radius_m = " << fmt(s.capture_radius) << "\n";
  out << "evader_radius_m = " << fmt(s.evader_radius) << "\n";
  out << "pursuer_vmax_mps = " << fmt(s.pursuer_limits.v_max) << "\n";
  out << "pursuer_amax_mps2 = " << fmt(s.pursuer_limits.a_max) << "\n";
  out << "pursuer_jmax_mps3 = " << fmt(s.pursuer_limits.j_max) << "\n";
  out << "evader_vmax_mps = " << fmt(s.evader_limits.v_max) << "\n";
  out << "evader_amax_mps2 = " << fmt(s.evader_limits.a_max) << "\n";
  out << "evader_jmax_mps3 = " << fmt(s.evader_limits.j_max) << "\n";
  out << "evader_policy = "
      << (s.evader_policy == EvaderPolicy::VoronoiEscape ? "voronoi-escape"
                                                         : "scripted")
      << "\n";
  out << "evader_scripted_velocity_mps = " << fmt_pair(s.evader_scripted_velocity)
      << "\n";
  out << "evader_work_radius_m = " << fmt(s.evader_work_radius) << "\n";
  out << "evader_obstacle_aware = " << (s.evader_obstacle_aware ? "true" : "false")
      << "\n";
  out << "shrink_mode = "
      << (s.shrink.mode == ShrinkMode::MinDisplacement ? "min-displacement"
                                                       : "fixed-rate")
      << "\n";
  out << "shrink_rate_mps = " << fmt(s.shrink.rate) << "\n";
  out << "shrink_floor_m = " << fmt(s.shrink.floor) << "\n";
  out << "mpc_lambda_u = " << fmt(s.mpc_weights.lambda_u) << "\n";
  out << "mpc_lambda_p = " << fmt(s.mpc_weights.lambda_p) << "\n";
  out << "mpc_substeps = " << s.mpc_substeps << "\n";
  out << "escape_range_m = " << fmt(s.escape_range) << "\n";
  if (s.arena_center) out << "arena_center_m = " << fmt_pair(*s.arena_center) << "\n";
  out << "seed = " << s.seed << "\n";
  out << "evader_start_m = " << fmt_pair(s.evader_start) << "\n";
  if (s.forest) {
    const ForestParams& f = *s.forest;
    out << "pursuer_radius_m = "
        << fmt(s.pursuer_radii.empty() ? 0.15 : s.pursuer_radii.front()) << "\n";
    out << "forest_center_m = " << fmt_pair(f.center) << "\n";
    out << "forest_area_half_m = " << fmt(f.area_half) << "\n";
    out << "forest_obstacle_count = " << f.obstacle_count << "\n";
    out << "forest_obstacle_radius_m = [" << fmt(f.obstacle_radius_min) << ", "
        << fmt(f.obstacle_radius_max) << "]\n";
    out << "forest_min_clearance_m = " << fmt(f.min_clearance) << "\n";
    out << "forest_pursuer_count = " << f.pursuer_count << "\n";
    out << "forest_spawn = " << (f.spawn_mode == SpawnMode::Box ? "box" : "ring")
        << "\n";
    out << "forest_spawn_box_m = [" << fmt(f.spawn_box_lo.x) << ", "
        << fmt(f.spawn_box_lo.y) << ", " << fmt(f.spawn_box_hi.x) << ", "
        << fmt(f.spawn_box_hi.y) << "]\n";
    out << "forest_spawn_ring_m = [" << fmt(f.spawn_ring_min) << ", "
        << fmt(f.spawn_ring_max) << "]\n";
  } else {
    for (const Point2& p : s.pursuer_starts) {
      out << "pursuer_start_m = " << fmt_pair(p) << "\n";
    }
    if (!s.pursuer_radii.empty()) {
      out << "pursuer_radii_m = [";
      for (std::size_t i = 0; i < s.pursuer_radii.size(); ++i) {
        out << (i ? ", " : "") << fmt(s.pursuer_radii[i]);
      }
      out << "]\n";
    }
    for (const Obstacle& obs : s.obstacles) {
      out << "obstacle_polygon_m = [";
      for (std::size_t i = 0; i < obs.hull.vertices.size(); ++i) {
        const Point2& v = obs.hull.vertices[i];
        out << (i ? ", " : "") << fmt(v.x) << ", " << fmt(v.y);
      }
      out << "]\n";
    }
  }
  return out.str();
}

}  // namespace pursuit
