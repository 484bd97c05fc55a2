#pragma once

#include <cmath>
#include <vector>

#include "pursuit/dynamics.hpp"
#include "pursuit/geometry.hpp"
#include "pursuit/rng.hpp"

namespace pursuit::testing {

// Random convex polygon: hull of `count` points in a disc around `center`.
// Retries until the hull is non-degenerate.
inline ConvexPolygon random_convex_polygon(Rng& rng, Point2 center,
                                           double radius, int count = 8) {
  for (;;) {
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      const double th = rng.uniform(0.0, 2.0 * M_PI);
      const double r = radius * std::sqrt(rng.uniform(0.0, 1.0));
      pts.push_back(center + r * Vec2{std::cos(th), std::sin(th)});
    }
    ConvexPolygon hull = convex_hull(pts);
    if (!hull.degenerate() && polygon_area(hull) > 1e-6) return hull;
  }
}

// Minimum distance between two segments by nested ternary search; the
// distance is jointly convex in the two parameters, so the search converges.
// Independent of the production point/segment routines.
inline double segment_distance_search(Point2 a0, Point2 a1, Point2 b0, Point2 b1) {
  auto point_at = [](Point2 p, Point2 q, double t) { return p + t * (q - p); };
  auto dist_at = [&](double s, double t) {
    const Point2 pa = point_at(a0, a1, s);
    const Point2 pb = point_at(b0, b1, t);
    return std::hypot(pa.x - pb.x, pa.y - pb.y);
  };
  auto min_over_t = [&](double s) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 100; ++i) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (dist_at(s, m1) < dist_at(s, m2)) hi = m2; else lo = m1;
    }
    return dist_at(s, 0.5 * (lo + hi));
  };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (min_over_t(m1) < min_over_t(m2)) hi = m2; else lo = m1;
  }
  return min_over_t(0.5 * (lo + hi));
}

inline double polygon_distance_search(const ConvexPolygon& a,
                                      const ConvexPolygon& b) {
  double best = std::numeric_limits<double>::infinity();
  const auto& va = a.vertices;
  const auto& vb = b.vertices;
  for (std::size_t i = 0, j = va.size() - 1; i < va.size(); j = i++) {
    for (std::size_t k = 0, l = vb.size() - 1; k < vb.size(); l = k++) {
      best = std::min(best, segment_distance_search(va[j], va[i], vb[l], vb[k]));
    }
  }
  return best;
}

// Classic fixed-step RK4 on the constant-jerk triple integrator, used as the
// independent check of the closed-form propagation.
inline FullState rk4_constant_jerk(FullState x, Vec2 jerk, double duration,
                                   double h) {
  auto deriv = [&](const FullState& s) {
    return FullState{{s.v.x, s.v.y}, {s.a.x, s.a.y}, jerk};
  };
  auto axpy = [](const FullState& s, const FullState& d, double w) {
    return FullState{s.p + w * d.p, s.v + w * d.v, s.a + w * d.a};
  };
  double t = 0.0;
  while (t < duration - 1e-15) {
    const double step = std::min(h, duration - t);
    const FullState k1 = deriv(x);
    const FullState k2 = deriv(axpy(x, k1, step / 2.0));
    const FullState k3 = deriv(axpy(x, k2, step / 2.0));
    const FullState k4 = deriv(axpy(x, k3, step));
    FullState sum;
    sum.p = k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p;
    sum.v = k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v;
    sum.a = k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a;
    x = axpy(x, sum, step / 6.0);
    t += step;
  }
  return x;
}

// Barycentric point-in-hull oracle: p is inside the hull iff some fan
// triangle contains it with non-negative barycentric coordinates.
inline bool point_in_hull_barycentric(const ConvexPolygon& hull, Point2 p,
                                      double tol = 1e-9) {
  const auto& v = hull.vertices;
  if (v.size() < 3) return false;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Point2 a = v[0];
    const Point2 b = v[i];
    const Point2 c = v[i + 1];
    const double den = cross(b - a, c - a);
    if (std::abs(den) < 1e-15) continue;
    const double l1 = cross(p - a, c - a) / den;
    const double l2 = cross(b - a, p - a) / den;
    const double l0 = 1.0 - l1 - l2;
    if (l0 >= -tol && l1 >= -tol && l2 >= -tol) return true;
  }
  return false;
}

}  // namespace pursuit::testing
