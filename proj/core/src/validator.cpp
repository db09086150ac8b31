#include "mapfkc/validator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace mapfkc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Local interval type; the sweep bookkeeping here stays independent of the
// reservation module.
struct Span {
  double start = 0.0;
  double end = kInf;
};

struct AgentInterval {
  int agent = -1;
  double start = 0.0;
  double end = kInf;
};

void check_speed(std::vector<Violation>& out, const AgentPlan& plan, const Action& a,
                 double v, const KinematicParams& params) {
  if (v < -kValidateTol || v > params.v_max + kValidateTol) {
    out.push_back({ViolationKind::SpeedBound, plan.agent_id, -1, a.t_start, a.from,
                   "speed " + std::to_string(v) + " outside [0, v_max]"});
  }
}

// Minimum physically possible duration of a rest-to-rest unit move.
double min_zero_zero_duration(double d, const KinematicParams& params) {
  if (std::isinf(params.a_acc) || std::isinf(params.a_dec)) return d / params.v_max;
  return zero_zero_time(d, params);
}

}  // namespace

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::SpeedBound: return "speed-bound";
    case ViolationKind::AccelBound: return "accel-bound";
    case ViolationKind::Teleport: return "teleport";
    case ViolationKind::RotationWhileMoving: return "rotation-while-moving";
    case ViolationKind::Collision: return "collision";
    case ViolationKind::GoalNotHeld: return "goal-not-held";
  }
  return "?";
}

std::vector<Violation> validate_agent(const AgentPlan& plan, const GridMap& map,
                                      const KinematicParams& params) {
  std::vector<Violation> out;
  const double d = map.cell_size();
  const bool finite_accel = !std::isinf(params.a_acc) && !std::isinf(params.a_dec);

  // Structural checks first: a malformed timeline makes the physical checks
  // meaningless.
  double prev_end = 0.0;
  for (std::size_t i = 0; i < plan.actions.size(); ++i) {
    const Action& a = plan.actions[i];
    if (a.t_end < a.t_start - kValidateTol) {
      throw PlanFormatError("action " + std::to_string(i) + " runs backwards in time");
    }
    const double expected_start = (i == 0) ? 0.0 : prev_end;
    if (std::abs(a.t_start - expected_start) > kValidateTol) {
      throw PlanFormatError("action " + std::to_string(i) +
                            " leaves a gap or overlap in the timeline");
    }
    if (a.kind != ActionKind::Move && a.from != a.to) {
      throw PlanFormatError("action " + std::to_string(i) +
                            " is stationary but changes cells");
    }
    prev_end = a.t_end;
  }

  Cell position = plan.start;
  for (std::size_t i = 0; i < plan.actions.size(); ++i) {
    const Action& a = plan.actions[i];

    if (a.from != position) {
      out.push_back({ViolationKind::Teleport, plan.agent_id, -1, a.t_start, a.from,
                     "action starts at " + to_string(a.from) + " but agent is at " +
                         to_string(position)});
    }
    if (!map.free_cell(a.from) || !map.free_cell(a.to)) {
      out.push_back({ViolationKind::Collision, plan.agent_id, -1, a.t_start, a.to,
                     "plan enters a blocked or out-of-bounds cell"});
    }

    check_speed(out, plan, a, a.v_start, params);
    check_speed(out, plan, a, a.v_end, params);

    if (a.kind == ActionKind::Move) {
      const int manhattan = std::abs(a.to.x - a.from.x) + std::abs(a.to.y - a.from.y);
      if (manhattan != 1) {
        out.push_back({ViolationKind::Teleport, plan.agent_id, -1, a.t_start, a.to,
                       "move between non-adjacent cells " + to_string(a.from) +
                           " -> " + to_string(a.to)});
      } else {
        const double dur = a.t_end - a.t_start;
        if (a.v_start + a.v_end > kValidateTol) {
          const double implied =
              (a.v_end * a.v_end - a.v_start * a.v_start) / (2.0 * d);
          if (implied > params.a_acc + kValidateTol ||
              implied < -params.a_dec - kValidateTol) {
            out.push_back({ViolationKind::AccelBound, plan.agent_id, -1, a.t_start,
                           a.from,
                           "implied acceleration " + std::to_string(implied) +
                               " outside [-a_dec, a_acc]"});
          }
          const double expected = 2.0 * d / (a.v_start + a.v_end);
          if (std::abs(dur - expected) > kValidateTol) {
            out.push_back({ViolationKind::Teleport, plan.agent_id, -1, a.t_start,
                           a.from,
                           "move duration " + std::to_string(dur) +
                               " inconsistent with recorded speeds (expected " +
                               std::to_string(expected) + ")"});
          }
        } else if (dur < min_zero_zero_duration(d, params) - kValidateTol) {
          out.push_back({ViolationKind::AccelBound, plan.agent_id, -1, a.t_start,
                         a.from,
                         "rest-to-rest move faster than the acceleration limits allow"});
        }
      }
      position = a.to;
    } else {
      if (std::abs(a.v_start) > kValidateTol || std::abs(a.v_end) > kValidateTol) {
        out.push_back({ViolationKind::RotationWhileMoving, plan.agent_id, -1,
                       a.t_start, a.from,
                       std::string(action_kind_name(a.kind)) + " at nonzero speed"});
      }
    }

    // An instantaneous speed change between actions (or departing a
    // standing start already moving) needs infinite acceleration.
    if (finite_accel) {
      const double prev_speed = (i == 0) ? 0.0 : plan.actions[i - 1].v_end;
      if (std::abs(prev_speed - a.v_start) > kValidateTol) {
        out.push_back({ViolationKind::AccelBound, plan.agent_id, -1, a.t_start,
                       a.from,
                       "speed jumps from " + std::to_string(prev_speed) + " to " +
                           std::to_string(a.v_start) + " between actions"});
      }
    }
  }

  const double final_speed = plan.actions.empty() ? 0.0 : plan.actions.back().v_end;
  if (position != plan.goal || std::abs(final_speed) > kValidateTol) {
    out.push_back({ViolationKind::GoalNotHeld, plan.agent_id, -1, prev_end, position,
                   "plan ends at " + to_string(position) + " with speed " +
                       std::to_string(final_speed)});
  }
  return out;
}

std::vector<Violation> validate_solution(const Solution& solution,
                                         const Instance& instance) {
  KinematicParams params = instance.kin;
  if (solution.fixed_speed) {
    // Baseline semantics: instant acceleration, speed capped by the chosen
    // fixed speed when it exceeds v_max.
    params.a_acc = kInf;
    params.a_dec = kInf;
    params.v_max = std::max(params.v_max, *solution.fixed_speed);
  }

  std::vector<Violation> out;
  for (const auto& plan : solution.agents) {
    auto agent_violations = validate_agent(plan, instance.map, params);
    out.insert(out.end(), agent_violations.begin(), agent_violations.end());
  }

  // Sweep recomputation, deliberately separate from the reservation module:
  // walk each plan's actions and accumulate per-cell occupancy intervals.
  std::unordered_map<Cell, std::vector<AgentInterval>, CellHash> occupancy;
  for (const auto& plan : solution.agents) {
    std::unordered_map<Cell, std::vector<Span>, CellHash> mine;
    auto occupy = [&](Cell c, double s, double e) {
      if (e <= s) return;
      auto& list = mine[c];
      if (!list.empty() && s <= list.back().end) {
        list.back().end = std::max(list.back().end, e);
      } else {
        list.push_back({s, e});
      }
    };
    for (const auto& a : plan.actions) {
      occupy(a.from, a.t_start, a.t_end);
      if (a.kind == ActionKind::Move) occupy(a.to, a.t_start, a.t_end);
    }
    const double arrival = plan.actions.empty() ? 0.0 : plan.actions.back().t_end;
    occupy(plan.final_position(), arrival, kInf);
    for (auto& [cell, list] : mine) {
      // Actions visit cells in time order, but revisits interleave; merge.
      std::sort(list.begin(), list.end(),
                [](const Span& x, const Span& y) { return x.start < y.start; });
      std::vector<Span> merged;
      for (const auto& iv : list) {
        if (!merged.empty() && iv.start <= merged.back().end) {
          merged.back().end = std::max(merged.back().end, iv.end);
        } else {
          merged.push_back(iv);
        }
      }
      for (const auto& iv : merged) {
        occupancy[cell].push_back({plan.agent_id, iv.start, iv.end});
      }
    }
  }

  for (auto& [cell, list] : occupancy) {
    std::sort(list.begin(), list.end(), [](const AgentInterval& a, const AgentInterval& b) {
      return a.start != b.start ? a.start < b.start : a.agent < b.agent;
    });
    double max_end = -kInf;
    int max_owner = -1;
    for (const auto& iv : list) {
      if (max_owner >= 0 && iv.start < max_end - kValidateTol && iv.agent != max_owner) {
        out.push_back({ViolationKind::Collision, max_owner, iv.agent, iv.start, cell,
                       "sweep intervals overlap"});
      }
      if (iv.end > max_end) {
        max_end = iv.end;
        max_owner = iv.agent;
      }
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    return a.time < b.time;
  });
  return out;
}

std::string violation_report(const std::vector<Violation>& violations) {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << violation_kind_name(v.kind) << " agent " << v.agent_a;
    if (v.agent_b >= 0) os << " vs agent " << v.agent_b;
    os << " at t=" << v.time << " cell " << to_string(v.cell) << ": " << v.detail
       << "\n";
  }
  return os.str();
}

}  // namespace mapfkc
