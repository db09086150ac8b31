#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mapfkc/grid_map.hpp"
#include "mapfkc/instance.hpp"
#include "mapfkc/plan.hpp"

namespace mapfkc {

enum class ViolationKind {
  SpeedBound,
  AccelBound,
  Teleport,
  RotationWhileMoving,
  Collision,
  GoalNotHeld,
};

const char* violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int agent_a = -1;
  int agent_b = -1;  // second agent for collisions, -1 otherwise
  double time = 0.0;
  Cell cell;
  std::string detail;
};

// Malformed plan structure (non-contiguous timeline, unsorted actions, ...),
// as opposed to a physically invalid but well-formed plan.
struct PlanFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tolerance for accumulated move-time arithmetic over long plans.
inline constexpr double kValidateTol = 1e-6;

// Kinematic certification of one agent's plan: speeds within [0, v_max],
// per-move implied acceleration within limits, rotations and waits only at
// rest, continuous positions, final stop at the goal.
std::vector<Violation> validate_agent(const AgentPlan& plan, const GridMap& map,
                                      const KinematicParams& params);

// Per-agent checks plus pairwise disjointness of all agents' sweep
// intervals (half-open). The sweep geometry is recomputed here from the
// plans, independently of the reservation module.
std::vector<Violation> validate_solution(const Solution& solution,
                                         const Instance& instance);

std::string violation_report(const std::vector<Violation>& violations);

}  // namespace mapfkc
