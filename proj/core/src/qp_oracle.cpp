#include "pursuit/qp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pursuit/rng.hpp"

namespace pursuit {

namespace {

constexpr double kFeasTol = 1e-9;

bool feasible(const std::vector<Vec2>& w, Vec2 a) {
  for (const Vec2& wi : w) {
    if (dot(wi, a) < 1.0 - kFeasTol) return false;
  }
  return true;
}

}  // namespace

std::optional<Vec2> qp_bruteforce_min_norm(Point2 p, const ConvexPolygon& hull) {
  std::vector<Vec2> w;
  w.reserve(hull.vertices.size());
  for (const Point2& v : hull.vertices) w.push_back(v - p);

  std::optional<Vec2> best;
  double best_norm = std::numeric_limits<double>::infinity();
  auto consider = [&](Vec2 a) {
    if (!feasible(w, a)) return;
    const double n = norm_sq(a);
    if (n < best_norm) {
      best_norm = n;
      best = a;
    }
  };

  // Single active constraint: a parallel to w_l with w_l . a = 1.
  for (const Vec2& wl : w) {
    const double n2 = norm_sq(wl);
    if (n2 > 1e-18) consider(wl / n2);
  }
  // Two active constraints: the 2x2 linear system w_l . a = w_m . a = 1.
  for (std::size_t l = 0; l < w.size(); ++l) {
    for (std::size_t m = l + 1; m < w.size(); ++m) {
      const double det = cross(w[l], w[m]);
      if (std::abs(det) < 1e-12) continue;
      consider({(w[m].y - w[l].y) / det, (w[l].x - w[m].x) / det});
    }
  }
  return best;
}

QpFuzzReport run_qp_fuzz(int cases, std::uint64_t seed) {
  Rng rng(seed);
  QpFuzzReport report;
  while (report.cases < cases) {
    const int count = rng.uniform_int(3, 10);
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(count));
    const Point2 center{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
    for (int i = 0; i < count; ++i) {
      pts.push_back(center + Vec2{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)});
    }
    const ConvexPolygon hull = convex_hull(pts);
    const Point2 p{rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)};
    if (hull.degenerate() || dist_point_convex(p, hull) < 0.05) continue;
    const Obstacle obs{hull};
    const Vec2 a_impl = separating_qp_solution(p, obs);
    const auto a_ref = qp_bruteforce_min_norm(p, hull);
    if (!a_ref) {
      report.all_separating = false;
      ++report.cases;
      continue;
    }
    report.max_deviation =
        std::max(report.max_deviation, norm(a_impl - *a_ref));
    // Strict separation: the point sits strictly below the value of every
    // vertex, the plane itself tight against the hull.
    const HalfPlane plane = obstacle_halfplane(p, obs, 0.0);
    bool separating = plane.eval(p) < -kFeasTol;
    for (const Point2& v : hull.vertices) {
      separating = separating && plane.eval(v) >= -kFeasTol &&
                   plane.eval(v) - plane.eval(p) > kFeasTol;
    }
    if (!separating) report.all_separating = false;
    ++report.cases;
  }
  return report;
}

}  // namespace pursuit
