#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "mapfkc/geometry.hpp"
#include "mapfkc/grid_map.hpp"
#include "mapfkc/heuristics.hpp"
#include "mapfkc/kinematics.hpp"
#include "mapfkc/plan.hpp"
#include "mapfkc/reservation.hpp"

namespace mapfkc {

// One node of the single-agent search over (cell, heading, speed index,
// arrival time, safe interval of the cell).
struct SearchState {
  Cell cell;
  Heading heading = Heading::East;
  int speed_idx = 0;
  double time = 0.0;
  int interval_id = 0;
};

struct PathNode {
  Cell cell;
  Heading heading = Heading::East;
  int speed_idx = 0;
  double time = 0.0;
};

using Path = std::vector<PathNode>;

struct SippResult {
  std::optional<Path> path;
  SearchStats stats;
};

double rotation_cost(Heading from, Heading to, const KinematicParams& params);

// True iff the state sits on the goal, stopped, in a safe interval that
// extends to +inf (so the agent can stay forever).
bool goal_test(const SearchState& state, Cell goal, const SafeIntervalIndex& sidx);

// Successor states:
//  - at speed 0 the agent may rotate and wait, then move to any neighbor,
//    arriving with any speed reachable from rest, in any safe interval of
//    the neighbor; the move occupies both cells for its whole duration.
//  - at speed != 0 it departs immediately straight ahead, reaching the
//    speeds achievable from its current one.
std::vector<SearchState> get_successors(const SearchState& state, const GridMap& map,
                                        const SafeIntervalIndex& sidx,
                                        const KinematicModel& model);

struct SippOptions {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  // When set, every expanded state is appended (test instrumentation).
  std::vector<SearchState>* expansion_log = nullptr;
};

// A* over safe intervals: minimal-arrival-time path from (start, heading,
// speed 0, t=0) to a stopped state on `goal`, or nullopt when OPEN empties.
SippResult sipp(const GridMap& map, const ReservationTable& table,
                const KinematicModel& model, const Heuristic& heuristic, Cell start,
                Heading start_heading, Cell goal, const SippOptions& options = {});

// Expands a search path into timed rotate/wait/move actions.
std::vector<Action> actions_from_path(const Path& path, const KinematicModel& model);

}  // namespace mapfkc
