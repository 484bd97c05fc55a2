#pragma once

#include <cstdint>
#include <optional>

#include "pursuit/cells.hpp"
#include "pursuit/geometry.hpp"

namespace pursuit {

// Independent reference solver for the minimum-norm separating QP: enumerates
// every active set of one or two vertex constraints, keeps the feasible
// candidates, and returns the smallest-norm one. Deliberately shares no code
// with separating_qp_solution. Empty when infeasible (point inside the hull).
std::optional<Vec2> qp_bruteforce_min_norm(Point2 p, const ConvexPolygon& hull);

struct QpFuzzReport {
  int cases = 0;
  double max_deviation = 0.0;   // max |a_impl - a_bruteforce| over all cases
  bool all_separating = true;   // every plane kept p strictly below all vertices
};

// Fuzzes `cases` random (exterior point, convex polygon) instances and
// compares the production solver against the brute-force enumeration.
QpFuzzReport run_qp_fuzz(int cases, std::uint64_t seed);

}  // namespace pursuit
