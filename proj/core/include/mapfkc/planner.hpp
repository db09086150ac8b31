#pragma once

#include <cstdint>
#include <vector>

#include "mapfkc/heuristics.hpp"
#include "mapfkc/instance.hpp"
#include "mapfkc/plan.hpp"
#include "mapfkc/sipp.hpp"

namespace mapfkc {

// Permutation of agent ids; agents are planned in this order, each treating
// earlier plans as moving obstacles.
using PriorityOrder = std::vector<int>;

PriorityOrder default_order(const Instance& instance);
PriorityOrder shuffled_order(const Instance& instance, std::uint32_t seed);

struct PlanOptions {
  // Wall-clock budget for the whole multi-agent solve; 0 disables.
  double timeout_s = 0.0;
  // Plan only the first k agents of the order when >= 0 (prefix solves).
  int limit_agents = -1;
};

// Prioritized planning: per agent, the reservation table holds blanket
// endpoint reservations of all not-yet-planned agents plus the sweeps of
// every planned path. Complete on well-formed instances.
Solution plan(const Instance& instance, HeuristicKind heuristic,
              const PriorityOrder& order, const PlanOptions& options = {});

// Fixed-speed baseline: states carry no speed or heading, every move costs
// cell_size / v_fixed, waiting and rotating are free ("stop and move
// instantly"), same sweep and reservation model. For H3 the per-goal
// distance field prices moves; otherwise Manhattan distance does.
Solution plan_fixed_speed(const Instance& instance, double v_fixed,
                          HeuristicKind heuristic, const PriorityOrder& order,
                          const PlanOptions& options = {});

}  // namespace mapfkc
