#include "mapfkc/reservation.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mapfkc {

namespace {
const std::vector<TimeInterval> kNoReservations;
}

void ReservationTable::reserve(Cell cell, TimeInterval interval) {
  if (interval.empty()) return;
  auto& list = reserved_[cell];
  // Insert keeping the list sorted by start, then merge neighbors that
  // overlap or touch.
  auto pos = std::lower_bound(list.begin(), list.end(), interval,
                              [](const TimeInterval& a, const TimeInterval& b) {
                                return a.start < b.start;
                              });
  pos = list.insert(pos, interval);
  std::size_t i = pos - list.begin();
  if (i > 0) --i;
  while (i + 1 < list.size()) {
    if (list[i + 1].start <= list[i].end) {
      list[i].end = std::max(list[i].end, list[i + 1].end);
      list.erase(list.begin() + i + 1);
    } else {
      ++i;
    }
  }
}

const std::vector<TimeInterval>& ReservationTable::reserved(Cell cell) const {
  const auto it = reserved_.find(cell);
  return it == reserved_.end() ? kNoReservations : it->second;
}

std::vector<TimeInterval> ReservationTable::safe_intervals(Cell cell) const {
  std::vector<TimeInterval> result;
  double t = 0.0;
  for (const auto& r : reserved(cell)) {
    if (r.start > t) result.push_back({t, r.start});
    t = std::max(t, r.end);
  }
  if (t < kInfTime) result.push_back({t, kInfTime});
  return result;
}

std::optional<TimeInterval> ReservationTable::fits(Cell cell,
                                                   TimeInterval occupancy) const {
  for (const auto& safe : safe_intervals(cell)) {
    if (safe.covers(occupancy)) return safe;
    if (safe.start > occupancy.start) break;
  }
  return std::nullopt;
}

std::string ReservationTable::debug_dump_json() const {
  nlohmann::json doc = nlohmann::json::object();
  std::vector<Cell> cells;
  cells.reserve(reserved_.size());
  for (const auto& [cell, list] : reserved_) cells.push_back(cell);
  std::sort(cells.begin(), cells.end());
  for (const Cell& cell : cells) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& r : reserved(cell)) {
      list.push_back({r.start, r.end == kInfTime ? -1.0 : r.end});
    }
    std::ostringstream key;
    key << cell.x << "," << cell.y;
    doc[key.str()] = std::move(list);
  }
  return doc.dump(2) + "\n";
}

std::vector<SweepRecord> sweep_of_plan(const AgentPlan& plan) {
  // Gather raw per-action records, then merge per cell.
  std::vector<SweepRecord> raw;
  raw.reserve(2 * plan.actions.size() + 2);
  for (const auto& a : plan.actions) {
    const TimeInterval span{a.t_start, a.t_end};
    if (a.kind == ActionKind::Move) {
      raw.push_back({a.from, span});
      raw.push_back({a.to, span});
    } else {
      raw.push_back({a.from, span});
    }
  }
  const double arrival = plan.actions.empty() ? 0.0 : plan.actions.back().t_end;
  raw.push_back({plan.final_position(), {arrival, kInfTime}});

  std::stable_sort(raw.begin(), raw.end(), [](const SweepRecord& a, const SweepRecord& b) {
    if (a.cell != b.cell) return a.cell < b.cell;
    return a.interval.start < b.interval.start;
  });
  std::vector<SweepRecord> merged;
  for (const auto& rec : raw) {
    if (rec.interval.empty()) continue;
    if (!merged.empty() && merged.back().cell == rec.cell &&
        rec.interval.start <= merged.back().interval.end) {
      merged.back().interval.end = std::max(merged.back().interval.end, rec.interval.end);
    } else {
      merged.push_back(rec);
    }
  }
  return merged;
}

void reserve_plan(ReservationTable& table, const AgentPlan& plan) {
  for (const auto& rec : sweep_of_plan(plan)) {
    table.reserve(rec.cell, rec.interval);
  }
}

void reserve_endpoints(ReservationTable& table, const Instance& instance,
                       int skip_agent, const std::vector<bool>& planned) {
  for (std::size_t i = 0; i < instance.agents.size(); ++i) {
    const auto& agent = instance.agents[i];
    if (agent.id == skip_agent) continue;
    if (i < planned.size() && planned[i]) continue;
    table.reserve(agent.start, {0.0, kInfTime});
    table.reserve(agent.goal, {0.0, kInfTime});
  }
}

const std::vector<TimeInterval>& SafeIntervalIndex::intervals(Cell cell) const {
  auto it = cache_.find(cell);
  if (it == cache_.end()) {
    it = cache_.emplace(cell, table_->safe_intervals(cell)).first;
  }
  return it->second;
}

int SafeIntervalIndex::find_containing(Cell cell, double t) const {
  const auto& list = intervals(cell);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].contains(t)) return static_cast<int>(i);
    if (list[i].start > t) break;
  }
  return -1;
}

}  // namespace mapfkc
