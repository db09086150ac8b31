#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mapfkc/geometry.hpp"
#include "mapfkc/kinematics.hpp"

namespace mapfkc {

enum class ActionKind { Rotate, Wait, Move };

const char* action_kind_name(ActionKind kind);

// One timed action; rotate/wait keep from == to and zero speeds, a move
// covers two adjacent cells with the recorded boundary speeds.
struct Action {
  ActionKind kind = ActionKind::Wait;
  Cell from;
  Cell to;
  double t_start = 0.0;
  double t_end = 0.0;
  double v_start = 0.0;
  double v_end = 0.0;
};

struct SearchStats {
  std::uint64_t expansions = 0;
  std::uint64_t generated = 0;
  std::uint64_t duplicates_pruned = 0;
  double runtime_ms = 0.0;
  bool timed_out = false;
};

struct AgentPlan {
  int agent_id = 0;
  Cell start;
  Heading start_heading = Heading::East;
  Cell goal;
  std::vector<Action> actions;
  double cost = 0.0;  // goal arrival time
  SearchStats stats;

  Cell final_position() const { return actions.empty() ? start : actions.back().to; }
};

struct Solution {
  std::vector<AgentPlan> agents;
  bool success = false;
  int failed_agent = -1;
  double sum_of_costs = 0.0;
  double makespan = 0.0;
  double runtime_ms = 0.0;
  std::uint64_t expansions = 0;
  std::uint64_t generated = 0;
  // Set for fixed-speed baseline solutions ("stop and move instantly"
  // semantics); empty for kinematic solutions.
  std::optional<double> fixed_speed;

  void finalize_totals();
};

// Parameters a plan file needs to be validated standalone.
struct SolutionMeta {
  KinematicParams kin;
  double cell_size = 1.0;
};

std::string write_solution_json(const Solution& solution, const SolutionMeta& meta);
// Returns the solution plus the embedded parameters.
std::pair<Solution, SolutionMeta> parse_solution_json(const std::string& text);
void save_solution(const Solution& solution, const SolutionMeta& meta,
                   const std::string& path);
std::pair<Solution, SolutionMeta> load_solution(const std::string& path);

}  // namespace mapfkc
