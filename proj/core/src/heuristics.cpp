#include "mapfkc/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace mapfkc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::optional<HeuristicKind> heuristic_from_name(const std::string& name) {
  if (name == "h1" || name == "H1") return HeuristicKind::H1;
  if (name == "h2" || name == "H2") return HeuristicKind::H2;
  if (name == "h3" || name == "H3") return HeuristicKind::H3;
  return std::nullopt;
}

const char* heuristic_name(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::H1: return "h1";
    case HeuristicKind::H2: return "h2";
    case HeuristicKind::H3: return "h3";
  }
  return "?";
}

H2Table build_h2_table(const KinematicModel& model, int max_dist_cells) {
  const int n = model.speed_count();
  H2Table table;
  table.time2.assign(max_dist_cells + 1, std::vector<double>(n, kInf));
  table.time2[0][0] = 0.0;  // a segment must end at speed 0
  for (int d = 1; d <= max_dist_cells; ++d) {
    for (int v = 0; v < n; ++v) {
      double best = kInf;
      for (int next : model.table.achievable[v]) {
        const double tail = table.time2[d - 1][next];
        if (tail == kInf) continue;
        best = std::min(best, model.table.move_time[v][next] + tail);
      }
      table.time2[d][v] = best;
    }
  }
  return table;
}

double h1_segment(double D_meters, double v, const KinematicParams& params) {
  if (D_meters <= kKinematicTol && v <= kKinematicTol) return 0.0;
  if (brake_distance(v, params) > D_meters + kKinematicTol) {
    // Cannot stop within D: the fastest stopping profile covering at least
    // D is a full brake.
    return v / params.a_dec;
  }
  return min_time_segment(D_meters, v, 0.0, params);
}

namespace {

// Headings along which a Manhattan path from `cell` to `goal` can start.
// Empty when cell == goal.
std::vector<Heading> first_headings(Cell cell, Cell goal) {
  std::vector<Heading> dirs;
  if (goal.x > cell.x) dirs.push_back(Heading::East);
  if (goal.x < cell.x) dirs.push_back(Heading::West);
  if (goal.y > cell.y) dirs.push_back(Heading::South);
  if (goal.y < cell.y) dirs.push_back(Heading::North);
  return dirs;
}

double initial_rotation(Cell cell, Heading heading, Cell goal,
                        const KinematicParams& params) {
  const auto dirs = first_headings(cell, goal);
  if (dirs.empty()) return 0.0;
  int turns = 2;
  for (Heading d : dirs) turns = std::min(turns, quarter_turns(heading, d));
  return turns * params.rot_time_quarter;
}

// Shared H1/H2 Manhattan-path structure; `seg_first` prices the leg that
// starts at the current speed, `seg_rest` the leg started from rest.
template <typename SegFirst, typename SegRest>
double manhattan_estimate(Cell cell, Heading heading, Cell goal, double v,
                          const KinematicParams& params, SegFirst seg_first,
                          SegRest seg_rest) {
  const int adx = std::abs(goal.x - cell.x);
  const int ady = std::abs(goal.y - cell.y);
  double base;
  if (adx == 0 && ady == 0) {
    if (v <= kKinematicTol) return 0.0;
    base = seg_first(0);
  } else if (adx == 0 || ady == 0) {
    base = seg_first(adx + ady);
  } else {
    const double rot = params.rot_time_quarter;
    base = std::min(seg_first(adx) + rot + seg_rest(ady),
                    seg_first(ady) + rot + seg_rest(adx));
  }
  return base + initial_rotation(cell, heading, goal, params);
}

}  // namespace

double h1_value(const KinematicModel& model, Cell cell, Heading heading, double v,
                Cell goal) {
  const double d = model.cell_size;
  const auto& params = model.params;
  return manhattan_estimate(
      cell, heading, goal, v, params,
      [&](int cells) { return h1_segment(cells * d, v, params); },
      [&](int cells) { return min_time_segment(cells * d, 0.0, 0.0, params); });
}

double h2_value(const H2Table& table, const KinematicModel& model, Cell cell,
                Heading heading, int speed_idx, Cell goal) {
  const double v = model.speed(speed_idx);
  const auto& params = model.params;
  auto seg_discrete = [&](int cells, int v_idx) {
    if (cells <= table.max_distance()) {
      const double t = table.at(cells, v_idx);
      if (t != kInf) return t;
    }
    // No discrete stopping chain within `cells`; fall back to the
    // continuous bound so the estimate stays admissible and dominated by H1.
    return h1_segment(cells * model.cell_size, model.speed(v_idx), params);
  };
  return manhattan_estimate(
      cell, heading, goal, v, params,
      [&](int cells) { return seg_discrete(cells, speed_idx); },
      [&](int cells) { return seg_discrete(cells, 0); });
}

std::vector<double> h3_build(const GridMap& map, Cell goal) {
  if (!map.free_cell(goal)) throw std::invalid_argument("h3 goal must be unblocked");
  std::vector<double> field(static_cast<std::size_t>(map.width()) * map.height(), kInf);
  std::deque<Cell> queue{goal};
  field[map.index(goal)] = 0.0;
  while (!queue.empty()) {
    const Cell cur = queue.front();
    queue.pop_front();
    for (const auto& [next, h] : map.neighbors(cur)) {
      (void)h;
      if (field[map.index(next)] != kInf) continue;
      field[map.index(next)] = field[map.index(cur)] + 1.0;
      queue.push_back(next);
    }
  }
  return field;
}

double h3_value(const std::vector<double>& field, const GridMap& map, Cell cell,
                const KinematicModel& model) {
  const double dist = field[map.index(cell)];
  if (dist == kInf) return kInf;
  return dist * model.cell_size / model.params.v_max;
}

Heuristic Heuristic::build(HeuristicKind kind, const GridMap& map, Cell goal,
                           const KinematicModel& model,
                           std::shared_ptr<const H2Table> shared_h2) {
  Heuristic h;
  h.kind_ = kind;
  h.model_ = &model;
  h.map_ = &map;
  h.goal_ = goal;
  switch (kind) {
    case HeuristicKind::H1:
      break;
    case HeuristicKind::H2:
      h.h2_ = shared_h2 ? std::move(shared_h2)
                        : std::make_shared<const H2Table>(
                              build_h2_table(model, map.width() + map.height()));
      break;
    case HeuristicKind::H3:
      h.h3_field_ = h3_build(map, goal);
      break;
  }
  return h;
}

double Heuristic::operator()(Cell cell, Heading heading, int speed_idx) const {
  switch (kind_) {
    case HeuristicKind::H1:
      return h1_value(*model_, cell, heading, model_->speed(speed_idx), goal_);
    case HeuristicKind::H2:
      return h2_value(*h2_, *model_, cell, heading, speed_idx, goal_);
    case HeuristicKind::H3:
      return h3_value(h3_field_, *map_, cell, *model_);
  }
  return 0.0;
}

}  // namespace mapfkc
