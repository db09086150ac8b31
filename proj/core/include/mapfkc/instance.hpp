#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mapfkc/geometry.hpp"
#include "mapfkc/grid_map.hpp"
#include "mapfkc/kinematics.hpp"

namespace mapfkc {

struct AgentTask {
  int id = 0;
  Cell start;
  Heading start_heading = Heading::East;
  Cell goal;
};

// A solvable problem: map, ordered agent tasks and kinematic parameters.
// Immutable after construction; shared read-only by concurrent solves.
struct Instance {
  GridMap map;
  std::vector<AgentTask> agents;
  KinematicParams kin;

  // Throws std::invalid_argument on out-of-bounds/blocked endpoints,
  // duplicate ids, shared starts or shared goals.
  void validate() const;
};

struct WellFormedness {
  bool ok = false;
  // One witness grid path per agent (start..goal) when ok.
  std::vector<std::vector<Cell>> witness;
  int failing_agent = -1;
};

// True iff every agent has a grid path from start to goal that avoids all
// other agents' start and goal cells.
WellFormedness is_well_formed(const Instance& instance);

// Draws distinct starts and goals for n agents from the map's candidate
// endpoints (cells 4-adjacent to an obstacle, plus the "station" cells of
// column 0), with random headings. Deterministic for a fixed seed; the
// returned instance passes is_well_formed (endpoints are redrawn a bounded
// number of times until it does).
// Throws std::runtime_error when the map has too few candidates or no
// well-formed draw is found.
Instance generate_instance(const GridMap& map, int n_agents, std::uint32_t seed,
                           const KinematicParams& kin = {});

// Scenario JSON: {"agents":[{"id":0,"start":[x,y],"heading":"E","goal":[x,y]},...]}
std::string write_scenario_json(const std::vector<AgentTask>& agents);
std::vector<AgentTask> parse_scenario_json(const std::string& text);
void save_scenario(const std::vector<AgentTask>& agents, const std::string& path);
std::vector<AgentTask> load_scenario(const std::string& path);

}  // namespace mapfkc
