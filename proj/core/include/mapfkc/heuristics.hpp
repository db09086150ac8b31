#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mapfkc/geometry.hpp"
#include "mapfkc/grid_map.hpp"
#include "mapfkc/kinematics.hpp"

namespace mapfkc {

enum class HeuristicKind { H1, H2, H3 };

std::optional<HeuristicKind> heuristic_from_name(const std::string& name);
const char* heuristic_name(HeuristicKind kind);

// time2[d][v] = minimal time to cover d cells in a straight line starting at
// speed index v and ending stopped, over the discretized speed set;
// +inf where no speed chain exists. Built once per kinematic model and
// shared by all agents.
struct H2Table {
  std::vector<std::vector<double>> time2;  // [distance in cells][speed index]

  double at(int dist_cells, int speed_idx) const { return time2[dist_cells][speed_idx]; }
  int max_distance() const { return static_cast<int>(time2.size()) - 1; }
};

H2Table build_h2_table(const KinematicModel& model, int max_dist_cells);

// Minimum time for a continuous-speed profile that starts at v, ends at 0
// and covers at least D meters. Falls back to the full-brake time when the
// braking distance exceeds D (the stop overshoots; the return trip is not
// charged, keeping the bound admissible).
double h1_segment(double D_meters, double v, const KinematicParams& params);

// Manhattan-path estimate with continuous speeds: per-segment minimum times
// plus a corner rotation, plus the initial rotation when no Manhattan path
// can start along the current heading.
double h1_value(const KinematicModel& model, Cell cell, Heading heading, double v,
                Cell goal);

// Same structure as H1 with per-segment times from the H2 table (discretized
// speeds); falls back to the continuous bound where the table is infeasible.
double h2_value(const H2Table& table, const KinematicModel& model, Cell cell,
                Heading heading, int speed_idx, Cell goal);

// Reverse-search distance field: shortest 4-connected grid distance (in
// cells) from each cell to the goal, static obstacles only; +inf where the
// goal is unreachable.
std::vector<double> h3_build(const GridMap& map, Cell goal);

double h3_value(const std::vector<double>& field, const GridMap& map, Cell cell,
                const KinematicModel& model);

// A goal-bound cost-to-go estimator; immutable after build, shared read-only.
class Heuristic {
 public:
  static Heuristic build(HeuristicKind kind, const GridMap& map, Cell goal,
                         const KinematicModel& model,
                         std::shared_ptr<const H2Table> shared_h2 = nullptr);

  double operator()(Cell cell, Heading heading, int speed_idx) const;

  HeuristicKind kind() const { return kind_; }

 private:
  HeuristicKind kind_ = HeuristicKind::H2;
  const KinematicModel* model_ = nullptr;
  const GridMap* map_ = nullptr;
  Cell goal_;
  std::shared_ptr<const H2Table> h2_;
  std::vector<double> h3_field_;
};

}  // namespace mapfkc
