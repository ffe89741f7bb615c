#pragma once

#include <string>
#include <vector>

#include "llma/geometry.hpp"

namespace llma {

// One round of action: exactly K end-effector waypoints. Coordinates must be
// finite; clamping to the table happens in the simulator.
constexpr int kDefaultWaypointCount = 5;

struct ControlSequence {
  std::vector<Point2> waypoints;
  std::vector<std::string> warnings;  // e.g. extra waypoints truncated
};

}  // namespace llma
