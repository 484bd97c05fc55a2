#pragma once

#include <stdexcept>
#include <string>

namespace pursuit {

// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegeneratePolygon : Error {
  using Error::Error;
};

struct DegenerateHull : Error {
  using Error::Error;
};

struct DegenerateRegion : Error {
  using Error::Error;
};

struct CoincidentAgents : Error {
  using Error::Error;
};

struct RobotInsideObstacle : Error {
  using Error::Error;
};

struct JerkExceedsLimit : Error {
  using Error::Error;
};

struct NoFeasiblePrimitive : Error {
  using Error::Error;
};

struct InvalidScenario : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct PlacementFailed : Error {
  using Error::Error;
};

}  // namespace pursuit
