#include "mapfkc/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <queue>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace mapfkc {

namespace {

constexpr double kTimeTol = 1e-9;

std::uint32_t bounded(std::mt19937& rng, std::uint32_t n) {
  const std::uint32_t limit = std::numeric_limits<std::uint32_t>::max() -
                              std::numeric_limits<std::uint32_t>::max() % n;
  std::uint32_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

int agent_index_by_id(const Instance& instance, int id) {
  for (std::size_t i = 0; i < instance.agents.size(); ++i) {
    if (instance.agents[i].id == id) return static_cast<int>(i);
  }
  throw std::invalid_argument("priority order names unknown agent id " +
                              std::to_string(id));
}

// --- fixed-speed baseline search (classic SIPP, no kinematic state) ---

struct BaselineNode {
  Cell cell;
  double time = 0.0;
  int interval_id = 0;
  int parent = -1;
};

struct BaselineHeap {
  double f = 0.0;
  double g = 0.0;
  std::uint64_t key = 0;
  int node = -1;
};

struct BaselineHeapCompare {
  bool operator()(const BaselineHeap& a, const BaselineHeap& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    if (a.key != b.key) return a.key > b.key;
    return a.node > b.node;
  }
};

struct BaselineResult {
  std::optional<std::vector<BaselineNode>> path;
  SearchStats stats;
};

BaselineResult baseline_sipp(const GridMap& map, const ReservationTable& table,
                             double v_fixed, HeuristicKind heuristic, Cell start,
                             Cell goal, const SippOptions& options) {
  const auto t_begin = std::chrono::steady_clock::now();
  BaselineResult result;
  auto finish = [&]() {
    result.stats.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  t_begin)
            .count();
    return result;
  };

  const double tau = map.cell_size() / v_fixed;
  std::vector<double> dist_field;
  if (heuristic == HeuristicKind::H3) dist_field = h3_build(map, goal);
  auto h_of = [&](Cell c) {
    if (heuristic == HeuristicKind::H3) {
      const double d = dist_field[map.index(c)];
      return d * map.cell_size() / v_fixed;  // inf when unreachable
    }
    return (std::abs(c.x - goal.x) + std::abs(c.y - goal.y)) * map.cell_size() /
           v_fixed;
  };

  if (!map.free_cell(start) || !map.free_cell(goal)) return finish();
  const SafeIntervalIndex sidx(table);
  const int start_interval = sidx.find_containing(start, 0.0);
  if (start_interval < 0) return finish();

  auto key_of = [&](Cell c, int iid) {
    return static_cast<std::uint64_t>(map.index(c)) |
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(iid)) << 32);
  };

  struct KeyInfo {
    double g = 0.0;
    int node = -1;
    bool closed = false;
  };

  std::vector<BaselineNode> nodes;
  std::priority_queue<BaselineHeap, std::vector<BaselineHeap>, BaselineHeapCompare> open;
  std::unordered_map<std::uint64_t, KeyInfo> best;

  nodes.push_back({start, 0.0, start_interval, -1});
  const double h0 = h_of(start);
  if (h0 != std::numeric_limits<double>::infinity()) {
    open.push({h0, 0.0, key_of(start, start_interval), 0});
    best[key_of(start, start_interval)] = {0.0, 0, false};
    result.stats.generated = 1;
  }

  while (!open.empty()) {
    const BaselineHeap top = open.top();
    open.pop();
    auto it = best.find(top.key);
    if (it == best.end() || it->second.closed || it->second.node != top.node) continue;
    it->second.closed = true;
    const BaselineNode node = nodes[top.node];
    ++result.stats.expansions;

    if (options.deadline && (result.stats.expansions & 1023) == 0 &&
        std::chrono::steady_clock::now() > *options.deadline) {
      result.stats.timed_out = true;
      return finish();
    }

    if (node.cell == goal &&
        sidx.interval(node.cell, node.interval_id).end == kInfTime) {
      std::vector<BaselineNode> path;
      for (int idx = top.node; idx >= 0; idx = nodes[idx].parent) {
        path.push_back(nodes[idx]);
      }
      std::reverse(path.begin(), path.end());
      result.path = std::move(path);
      return finish();
    }

    const TimeInterval origin = sidx.interval(node.cell, node.interval_id);
    for (const auto& [ncell, hd] : map.neighbors(node.cell)) {
      (void)hd;
      const auto& intervals = sidx.intervals(ncell);
      for (int iid = 0; iid < static_cast<int>(intervals.size()); ++iid) {
        const TimeInterval& safe = intervals[iid];
        const double depart = std::max(node.time, safe.start);
        const double arrive = depart + tau;
        if (arrive > origin.end + kTimeTol) break;
        if (arrive >= safe.end - kTimeTol) continue;
        ++result.stats.generated;
        const double h = h_of(ncell);
        if (h == std::numeric_limits<double>::infinity()) continue;
        const std::uint64_t key = key_of(ncell, iid);
        auto found = best.find(key);
        if (found != best.end()) {
          if (found->second.closed || arrive >= found->second.g - kTimeTol) {
            ++result.stats.duplicates_pruned;
            continue;
          }
          found->second.g = arrive;
          found->second.node = static_cast<int>(nodes.size());
        } else {
          best[key] = {arrive, static_cast<int>(nodes.size()), false};
        }
        nodes.push_back({ncell, arrive, iid, top.node});
        open.push({arrive + h, arrive, key, static_cast<int>(nodes.size()) - 1});
      }
    }
  }
  return finish();
}

std::vector<Action> baseline_actions(const std::vector<BaselineNode>& path,
                                     double v_fixed, double cell_size) {
  std::vector<Action> actions;
  if (path.size() < 2) return actions;
  const double tau = cell_size / v_fixed;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const BaselineNode& a = path[i];
    const BaselineNode& b = path[i + 1];
    const double depart = b.time - tau;
    if (depart > a.time + kTimeTol) {
      actions.push_back({ActionKind::Wait, a.cell, a.cell, a.time, depart, 0.0, 0.0});
    }
    actions.push_back(
        {ActionKind::Move, a.cell, b.cell, depart, b.time, v_fixed, v_fixed});
  }
  actions.back().v_end = 0.0;  // instant stop at the goal
  return actions;
}

using SingleAgentSolver = std::function<std::optional<AgentPlan>(
    const AgentTask&, const ReservationTable&, SearchStats&)>;

// Shared prioritized loop: blanket-reserve endpoints of unplanned agents,
// search, then replace the blanket with the real sweep reservations.
Solution prioritized_loop(const Instance& instance, const PriorityOrder& order,
                          const PlanOptions& options,
                          const SingleAgentSolver& solve_one) {
  const auto t_begin = std::chrono::steady_clock::now();
  instance.validate();

  std::vector<int> indices;
  indices.reserve(order.size());
  std::vector<bool> seen(instance.agents.size(), false);
  for (int id : order) {
    const int idx = agent_index_by_id(instance, id);
    if (seen[idx]) throw std::invalid_argument("priority order repeats an agent id");
    seen[idx] = true;
    indices.push_back(idx);
  }
  if (indices.size() != instance.agents.size()) {
    throw std::invalid_argument("priority order must cover every agent");
  }

  Solution solution;
  solution.success = true;
  std::vector<bool> planned(instance.agents.size(), false);
  ReservationTable master;
  const int limit = options.limit_agents >= 0
                        ? std::min<int>(options.limit_agents, indices.size())
                        : static_cast<int>(indices.size());

  for (int k = 0; k < limit; ++k) {
    const int idx = indices[k];
    const AgentTask& task = instance.agents[idx];
    ReservationTable table = master;
    reserve_endpoints(table, instance, task.id, planned);

    SearchStats stats;
    auto agent_plan = solve_one(task, table, stats);
    if (!agent_plan) {
      solution.success = false;
      solution.failed_agent = task.id;
      AgentPlan failed;
      failed.agent_id = task.id;
      failed.start = task.start;
      failed.start_heading = task.start_heading;
      failed.goal = task.goal;
      failed.stats = stats;
      solution.agents.push_back(std::move(failed));
      break;
    }
    agent_plan->stats = stats;
    reserve_plan(master, *agent_plan);
    planned[idx] = true;
    solution.agents.push_back(std::move(*agent_plan));
  }

  solution.finalize_totals();
  solution.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t_begin)
          .count();
  return solution;
}

std::optional<std::chrono::steady_clock::time_point> deadline_from(
    const PlanOptions& options) {
  if (options.timeout_s <= 0.0) return std::nullopt;
  return std::chrono::steady_clock::now() +
         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
             std::chrono::duration<double>(options.timeout_s));
}

}  // namespace

PriorityOrder default_order(const Instance& instance) {
  PriorityOrder order;
  order.reserve(instance.agents.size());
  for (const auto& a : instance.agents) order.push_back(a.id);
  return order;
}

PriorityOrder shuffled_order(const Instance& instance, std::uint32_t seed) {
  PriorityOrder order = default_order(instance);
  std::mt19937 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[bounded(rng, static_cast<std::uint32_t>(i))]);
  }
  return order;
}

Solution plan(const Instance& instance, HeuristicKind heuristic,
              const PriorityOrder& order, const PlanOptions& options) {
  const KinematicModel model =
      KinematicModel::build(instance.kin, instance.map.cell_size());
  std::shared_ptr<const H2Table> shared_h2;
  if (heuristic == HeuristicKind::H2) {
    shared_h2 = std::make_shared<const H2Table>(
        build_h2_table(model, instance.map.width() + instance.map.height()));
  }
  const auto deadline = deadline_from(options);

  Solution solution = prioritized_loop(
      instance, order, options,
      [&](const AgentTask& task, const ReservationTable& table,
          SearchStats& stats) -> std::optional<AgentPlan> {
        const Heuristic h =
            Heuristic::build(heuristic, instance.map, task.goal, model, shared_h2);
        SippOptions sipp_options;
        sipp_options.deadline = deadline;
        SippResult r = sipp(instance.map, table, model, h, task.start,
                            task.start_heading, task.goal, sipp_options);
        stats = r.stats;
        if (!r.path) return std::nullopt;
        AgentPlan plan;
        plan.agent_id = task.id;
        plan.start = task.start;
        plan.start_heading = task.start_heading;
        plan.goal = task.goal;
        plan.actions = actions_from_path(*r.path, model);
        plan.cost = r.path->back().time;
        return plan;
      });
  return solution;
}

Solution plan_fixed_speed(const Instance& instance, double v_fixed,
                          HeuristicKind heuristic, const PriorityOrder& order,
                          const PlanOptions& options) {
  if (v_fixed <= 0.0) throw std::invalid_argument("fixed speed must be positive");
  const auto deadline = deadline_from(options);

  Solution solution = prioritized_loop(
      instance, order, options,
      [&](const AgentTask& task, const ReservationTable& table,
          SearchStats& stats) -> std::optional<AgentPlan> {
        SippOptions sipp_options;
        sipp_options.deadline = deadline;
        BaselineResult r = baseline_sipp(instance.map, table, v_fixed, heuristic,
                                         task.start, task.goal, sipp_options);
        stats = r.stats;
        if (!r.path) return std::nullopt;
        AgentPlan plan;
        plan.agent_id = task.id;
        plan.start = task.start;
        plan.start_heading = task.start_heading;
        plan.goal = task.goal;
        plan.actions =
            baseline_actions(*r.path, v_fixed, instance.map.cell_size());
        plan.cost = r.path->back().time;
        return plan;
      });
  solution.fixed_speed = v_fixed;
  return solution;
}

}  // namespace mapfkc
