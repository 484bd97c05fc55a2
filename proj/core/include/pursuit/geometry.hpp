#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace pursuit {

// Vertex dedup / convexity tolerance shared by the whole geometry kernel.
// Arenas are meter scale, 64-bit reals throughout.
inline constexpr double kGeomTol = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

using Point2 = Vec2;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
inline Vec2 operator/(Vec2 v, double s) { return {v.x / s, v.y / s}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline Vec2& operator-=(Vec2& a, Vec2 b) { a.x -= b.x; a.y -= b.y; return a; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
// z-component of the 3-D cross product; > 0 when b is counterclockwise of a.
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(Vec2 v) { return v.x * v.x + v.y * v.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
// Left-hand perpendicular (rotate +90 degrees).
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }
inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// Linear constraint normal . p <= offset. The normal need not be unit length;
// normalized() rescales so that offsets read as metric distances.
struct HalfPlane {
  Vec2 normal;
  double offset = 0.0;

  // <= 0 inside, > 0 outside. In meters only when the normal is unit length.
  double eval(Point2 p) const { return dot(normal, p) - offset; }
  bool contains(Point2 p, double tol = kGeomTol) const { return eval(p) <= tol; }
  HalfPlane normalized() const;
};

// Convex polygon, counterclockwise vertex order, no repeated vertices within
// kGeomTol. Empty (zero vertices) is a first-class value; one or two vertices
// represent a degenerate point/segment.
struct ConvexPolygon {
  std::vector<Point2> vertices;

  bool empty() const { return vertices.empty(); }
  std::size_t size() const { return vertices.size(); }
  bool degenerate() const { return vertices.size() < 3; }
};

struct MassCentroid {
  double mass = 0.0;  // area, m^2
  Point2 centroid;
};

// Axis-aligned rectangle [lo.x, hi.x] x [lo.y, hi.y] as a CCW polygon.
ConvexPolygon make_rect(Point2 lo, Point2 hi);

// Regular k-gon of circumradius `radius` around `center`, rotated by `rotation`.
ConvexPolygon make_regular_polygon(Point2 center, double radius, int sides,
                                   double rotation = 0.0);

double polygon_area(const ConvexPolygon& poly);

// True if vertices form a CCW convex chain with no duplicate vertices.
bool is_convex_ccw(const ConvexPolygon& poly, double tol = kGeomTol);

// {p in poly | h.normal . p <= h.offset}. Empty in, empty out.
ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const HalfPlane& h);

// Throws DegeneratePolygon when area <= 1e-12 m^2.
MassCentroid polygon_mass_centroid(const ConvexPolygon& poly);

// Integral of |q - about|^2 over the polygon, by fan triangulation with the
// closed-form second moment of each triangle. Throws DegeneratePolygon.
double polygon_second_moment(const ConvexPolygon& poly, Point2 about);

// Minimal CCW hull; collinear interior points dropped. Fewer than 3
// non-collinear input points yield a degenerate (point/segment) polygon.
ConvexPolygon convex_hull(std::vector<Point2> points);

// True when p is inside or on the boundary (within tol) of a CCW convex
// polygon with >= 3 vertices.
bool point_in_convex(const ConvexPolygon& poly, Point2 p, double tol = kGeomTol);

// Negative inside, positive outside, |value| = distance to the boundary.
// Throws DegenerateHull when the hull has fewer than 3 vertices.
double signed_hull_distance(const ConvexPolygon& hull, Point2 p);

double point_segment_distance(Point2 p, Point2 a, Point2 b);

// Nearest point of a non-empty polygon to p (p itself when inside).
Point2 closest_point_convex(Point2 p, const ConvexPolygon& poly);

// 0 when p is inside; Euclidean distance to the boundary otherwise.
double dist_point_convex(Point2 p, const ConvexPolygon& poly);

// Minimum distance between two non-empty convex sets; 0 when they intersect.
double polytope_min_distance(const ConvexPolygon& a, const ConvexPolygon& b);

}  // namespace pursuit
