#include "mapfkc/sipp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

namespace mapfkc {

namespace {

constexpr double kTimeTol = 1e-9;

// Duplicate key: (cell, heading, speed index, safe interval id).
std::uint64_t state_key(const SearchState& s) {
  return static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.cell.x)) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.cell.y)) << 12) |
         (static_cast<std::uint64_t>(static_cast<std::uint8_t>(s.heading)) << 24) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.speed_idx)) << 26) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.interval_id)) << 32);
}

struct Node {
  SearchState state;
  int parent = -1;
};

struct HeapEntry {
  double f = 0.0;
  double g = 0.0;
  std::uint64_t key = 0;
  int node = -1;
};

// Min-heap order: smaller f first; ties by larger g (deeper states), then
// lexicographic key, then insertion order. Deterministic.
struct HeapCompare {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    if (a.key != b.key) return a.key > b.key;
    return a.node > b.node;
  }
};

struct KeyInfo {
  double g = 0.0;
  int node = -1;
  bool closed = false;
};

}  // namespace

double rotation_cost(Heading from, Heading to, const KinematicParams& params) {
  return quarter_turns(from, to) * params.rot_time_quarter;
}

bool goal_test(const SearchState& state, Cell goal, const SafeIntervalIndex& sidx) {
  if (state.cell != goal || state.speed_idx != 0) return false;
  return sidx.interval(state.cell, state.interval_id).end == kInfTime;
}

std::vector<SearchState> get_successors(const SearchState& state, const GridMap& map,
                                        const SafeIntervalIndex& sidx,
                                        const KinematicModel& model) {
  std::vector<SearchState> result;
  const TimeInterval origin = sidx.interval(state.cell, state.interval_id);
  const auto& table = model.table;

  if (state.speed_idx == 0) {
    // The agent may rotate and wait before departing; waiting is implicit in
    // the per-interval earliest departure. The origin stays occupied until
    // the move completes.
    for (const auto& [ncell, hd] : map.neighbors(state.cell)) {
      const double ready = state.time + rotation_cost(state.heading, hd, model.params);
      for (int next_speed : table.achievable[0]) {
        const double tau = table.move_time[0][next_speed];
        const auto& intervals = sidx.intervals(ncell);
        for (int iid = 0; iid < static_cast<int>(intervals.size()); ++iid) {
          const TimeInterval& safe = intervals[iid];
          const double depart = std::max(ready, safe.start);
          const double arrive = depart + tau;
          if (arrive > origin.end + kTimeTol) break;  // later intervals only worse
          if (arrive >= safe.end - kTimeTol) continue;
          result.push_back({ncell, hd, next_speed, arrive, iid});
        }
      }
    }
    return result;
  }

  // Moving: no waiting or rotating, only the cell straight ahead, which must
  // be free for the whole move starting now.
  const Cell ncell = step(state.cell, state.heading);
  if (!map.free_cell(ncell)) return result;
  const int iid = sidx.find_containing(ncell, state.time);
  if (iid < 0) return result;
  const TimeInterval& safe = sidx.interval(ncell, iid);
  for (int next_speed : table.achievable[state.speed_idx]) {
    const double arrive = state.time + table.move_time[state.speed_idx][next_speed];
    if (arrive > origin.end + kTimeTol) continue;
    if (arrive >= safe.end - kTimeTol) continue;
    result.push_back({ncell, state.heading, next_speed, arrive, iid});
  }
  return result;
}

SippResult sipp(const GridMap& map, const ReservationTable& table,
                const KinematicModel& model, const Heuristic& heuristic, Cell start,
                Heading start_heading, Cell goal, const SippOptions& options) {
  const auto t_begin = std::chrono::steady_clock::now();
  SippResult result;
  auto finish = [&]() {
    result.stats.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  t_begin)
            .count();
    return result;
  };

  if (!map.free_cell(start) || !map.free_cell(goal)) return finish();
  const SafeIntervalIndex sidx(table);
  const int start_interval = sidx.find_containing(start, 0.0);
  if (start_interval < 0) return finish();

  std::vector<Node> nodes;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCompare> open;
  std::unordered_map<std::uint64_t, KeyInfo> best;

  const SearchState start_state{start, start_heading, 0, 0.0, start_interval};
  nodes.push_back({start_state, -1});
  const double h0 = heuristic(start, start_heading, 0);
  if (h0 != std::numeric_limits<double>::infinity()) {
    open.push({h0, 0.0, state_key(start_state), 0});
    best[state_key(start_state)] = {0.0, 0, false};
    result.stats.generated = 1;
  }

  while (!open.empty()) {
    const HeapEntry top = open.top();
    open.pop();
    auto it = best.find(top.key);
    if (it == best.end() || it->second.closed || it->second.node != top.node) {
      continue;  // stale entry superseded by a cheaper rediscovery
    }
    it->second.closed = true;
    const Node node = nodes[top.node];
    ++result.stats.expansions;
    if (options.expansion_log) options.expansion_log->push_back(node.state);

    if (options.deadline && (result.stats.expansions & 1023) == 0 &&
        std::chrono::steady_clock::now() > *options.deadline) {
      result.stats.timed_out = true;
      return finish();
    }

    if (goal_test(node.state, goal, sidx)) {
      Path path;
      for (int idx = top.node; idx >= 0; idx = nodes[idx].parent) {
        const SearchState& s = nodes[idx].state;
        path.push_back({s.cell, s.heading, s.speed_idx, s.time});
      }
      std::reverse(path.begin(), path.end());
      result.path = std::move(path);
      return finish();
    }

    for (const SearchState& succ : get_successors(node.state, map, sidx, model)) {
      ++result.stats.generated;
      const double h = heuristic(succ.cell, succ.heading, succ.speed_idx);
      if (h == std::numeric_limits<double>::infinity()) continue;
      const std::uint64_t key = state_key(succ);
      auto found = best.find(key);
      if (found != best.end()) {
        if (found->second.closed || succ.time >= found->second.g - kTimeTol) {
          ++result.stats.duplicates_pruned;
          continue;
        }
        found->second.g = succ.time;
        found->second.node = static_cast<int>(nodes.size());
      } else {
        best[key] = {succ.time, static_cast<int>(nodes.size()), false};
      }
      nodes.push_back({succ, top.node});
      open.push({succ.time + h, succ.time, key, static_cast<int>(nodes.size()) - 1});
    }
  }
  return finish();
}

std::vector<Action> actions_from_path(const Path& path, const KinematicModel& model) {
  std::vector<Action> actions;
  if (path.size() < 2) return actions;
  const auto& params = model.params;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const PathNode& a = path[i];
    const PathNode& b = path[i + 1];
    const double tau = model.table.move_time[a.speed_idx][b.speed_idx];
    const double depart = b.time - tau;
    double t = a.time;
    if (a.speed_idx == 0) {
      const double rc = rotation_cost(a.heading, b.heading, params);
      if (rc > 0.0) {
        actions.push_back({ActionKind::Rotate, a.cell, a.cell, t, t + rc, 0.0, 0.0});
        t += rc;
      }
      if (depart > t + kKinematicTol) {
        actions.push_back({ActionKind::Wait, a.cell, a.cell, t, depart, 0.0, 0.0});
        t = depart;
      }
    }
    actions.push_back({ActionKind::Move, a.cell, b.cell, t, b.time,
                       model.speed(a.speed_idx), model.speed(b.speed_idx)});
  }
  return actions;
}

}  // namespace mapfkc
