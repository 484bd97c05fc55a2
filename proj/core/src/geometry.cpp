#include "pursuit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pursuit/errors.hpp"

namespace pursuit {

namespace {

constexpr double kMinArea = 1e-12;  // m^2, below this a polygon is degenerate

// Drop consecutive vertices closer than kGeomTol (closing edge included).
std::vector<Point2> dedup_ring(std::vector<Point2> v) {
  if (v.size() < 2) return v;
  std::vector<Point2> out;
  out.reserve(v.size());
  for (const Point2& p : v) {
    if (out.empty() || distance(out.back(), p) > kGeomTol) out.push_back(p);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) <= kGeomTol) {
    out.pop_back();
  }
  return out;
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
  // Collinear touching cases are covered by the point-segment distances the
  // callers also evaluate, so only the proper crossing needs detecting here.
  return false;
}

// Second moment of triangle (a, b, c) about the origin: for signed double
// area s = cross(b-a, c-a), the integral of |q|^2 over the triangle is
// (s/2)/6 * (a.a + b.b + c.c + a.b + b.c + a.c).
double triangle_second_moment(Point2 a, Point2 b, Point2 c) {
  const double s = cross(b - a, c - a);
  const double q = dot(a, a) + dot(b, b) + dot(c, c) + dot(a, b) + dot(b, c) + dot(a, c);
  return s / 12.0 * q;
}

}  // namespace

HalfPlane HalfPlane::normalized() const {
  const double n = norm(normal);
  return {normal / n, offset / n};
}

ConvexPolygon make_rect(Point2 lo, Point2 hi) {
  return {{lo, {hi.x, lo.y}, hi, {lo.x, hi.y}}};
}

ConvexPolygon make_regular_polygon(Point2 center, double radius, int sides,
                                   double rotation) {
  ConvexPolygon poly;
  poly.vertices.reserve(static_cast<std::size_t>(sides));
  for (int i = 0; i < sides; ++i) {
    const double th = rotation + 2.0 * M_PI * i / sides;
    poly.vertices.push_back(center + radius * Vec2{std::cos(th), std::sin(th)});
  }
  return poly;
}

double polygon_area(const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  if (v.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    twice += cross(v[j], v[i]);
  }
  return 0.5 * twice;
}

bool is_convex_ccw(const ConvexPolygon& poly, double tol) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(v[i], v[j]) <= tol) return false;
    }
  }
  if (n < 3) return true;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % n];
    const Point2& c = v[(i + 2) % n];
    if (cross(b - a, c - b) < -tol) return false;
  }
  return true;
}

ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const HalfPlane& h) {
  const auto& v = poly.vertices;
  if (v.empty()) return {};
  if (v.size() == 1) {
    return h.contains(v[0], 0.0) ? poly : ConvexPolygon{};
  }

  std::vector<Point2> out;
  out.reserve(v.size() + 2);
  const std::size_t n = v.size();
  // Vertices within kGeomTol of the boundary count as inside and never spawn
  // intersection points, which keeps repeated clipping idempotent.
  const double eps = kGeomTol * norm(h.normal);
  auto side = [&](double d) { return d > eps ? 1 : (d < -eps ? -1 : 0); };
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& cur = v[i];
    const Point2& nxt = v[(i + 1) % n];
    const double dc = h.eval(cur);
    const double dn = h.eval(nxt);
    if (side(dc) <= 0) out.push_back(cur);
    if (side(dc) * side(dn) < 0) {
      const double t = dc / (dc - dn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return {dedup_ring(std::move(out))};
}

MassCentroid polygon_mass_centroid(const ConvexPolygon& poly) {
  const double area = polygon_area(poly);
  if (area <= kMinArea) {
    throw DegeneratePolygon("polygon area below 1e-12 m^2, no centroid");
  }
  const auto& v = poly.vertices;
  Vec2 c{0.0, 0.0};
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const double w = cross(v[j], v[i]);
    c += w * (v[j] + v[i]);
  }
  return {area, c / (6.0 * area)};
}

double polygon_second_moment(const ConvexPolygon& poly, Point2 about) {
  if (polygon_area(poly) <= kMinArea) {
    throw DegeneratePolygon("polygon area below 1e-12 m^2, no second moment");
  }
  const auto& v = poly.vertices;
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    total += triangle_second_moment(v[0] - about, v[i] - about, v[i + 1] - about);
  }
  return total;
}

ConvexPolygon convex_hull(std::vector<Point2> points) {
  std::sort(points.begin(), points.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](Point2 a, Point2 b) {
                             return distance(a, b) <= kGeomTol;
                           }),
               points.end());
  const std::size_t n = points.size();
  if (n <= 2) return {std::move(points)};

  // Andrew's monotone chain; the <= pop drops collinear interior points.
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 1]) <= kGeomTol) --k;
    hull[k++] = points[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 1]) <= kGeomTol) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  if (hull.size() == 2 && distance(hull[0], hull[1]) <= kGeomTol) hull.pop_back();
  return {std::move(hull)};
}

bool point_in_convex(const ConvexPolygon& poly, Point2 p, double tol) {
  const auto& v = poly.vertices;
  if (v.size() < 3) return false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if (cross(v[i] - v[j], p - v[j]) < -tol * std::max(1.0, distance(v[i], v[j]))) {
      return false;
    }
  }
  return true;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Vec2 ab = b - a;
  const double len2 = norm_sq(ab);
  if (len2 <= kGeomTol * kGeomTol) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

double signed_hull_distance(const ConvexPolygon& hull, Point2 p) {
  if (hull.size() < 3) {
    throw DegenerateHull("signed distance needs a hull with >= 3 vertices");
  }
  const auto& v = hull.vertices;
  double boundary = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    boundary = std::min(boundary, point_segment_distance(p, v[j], v[i]));
  }
  return point_in_convex(hull, p, 0.0) ? -boundary : boundary;
}

Point2 closest_point_convex(Point2 p, const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  if (v.size() == 1) return v[0];
  if (v.size() >= 3 && point_in_convex(poly, p, 0.0)) return p;
  double best = std::numeric_limits<double>::infinity();
  Point2 bp = v[0];
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const Vec2 ab = v[i] - v[j];
    const double len2 = norm_sq(ab);
    Point2 cand = v[j];
    if (len2 > kGeomTol * kGeomTol) {
      const double t = std::clamp(dot(p - v[j], ab) / len2, 0.0, 1.0);
      cand = v[j] + t * ab;
    }
    const double d = distance(p, cand);
    if (d < best) {
      best = d;
      bp = cand;
    }
  }
  return bp;
}

double dist_point_convex(Point2 p, const ConvexPolygon& poly) {
  if (poly.size() >= 3 && point_in_convex(poly, p, 0.0)) return 0.0;
  return distance(p, closest_point_convex(p, poly));
}

double polytope_min_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
  for (const Point2& p : a.vertices) {
    if (b.size() >= 3 && point_in_convex(b, p, 0.0)) return 0.0;
  }
  for (const Point2& p : b.vertices) {
    if (a.size() >= 3 && point_in_convex(a, p, 0.0)) return 0.0;
  }
  const auto& va = a.vertices;
  const auto& vb = b.vertices;
  if (va.size() >= 2 && vb.size() >= 2) {
    for (std::size_t i = 0, j = va.size() - 1; i < va.size(); j = i++) {
      for (std::size_t k = 0, l = vb.size() - 1; k < vb.size(); l = k++) {
        if (segments_intersect(va[j], va[i], vb[l], vb[k])) return 0.0;
      }
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Point2& p : va) {
    if (vb.size() == 1) {
      best = std::min(best, distance(p, vb[0]));
    } else {
      for (std::size_t k = 0, l = vb.size() - 1; k < vb.size(); l = k++) {
        best = std::min(best, point_segment_distance(p, vb[l], vb[k]));
      }
    }
  }
  for (const Point2& p : vb) {
    if (va.size() == 1) {
      best = std::min(best, distance(p, va[0]));
    } else {
      for (std::size_t k = 0, l = va.size() - 1; k < va.size(); l = k++) {
        best = std::min(best, point_segment_distance(p, va[l], va[k]));
      }
    }
  }
  return best;
}

}  // namespace pursuit
