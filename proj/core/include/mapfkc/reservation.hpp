#pragma once

#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mapfkc/geometry.hpp"
#include "mapfkc/instance.hpp"
#include "mapfkc/plan.hpp"

namespace mapfkc {

inline constexpr double kInfTime = std::numeric_limits<double>::infinity();

// Half-open [start, end); end may be +inf.
struct TimeInterval {
  double start = 0.0;
  double end = kInfTime;

  bool empty() const { return end <= start; }
  bool contains(double t) const { return t >= start && t < end; }
  bool covers(const TimeInterval& o) const { return start <= o.start && o.end <= end; }
  bool operator==(const TimeInterval& o) const { return start == o.start && end == o.end; }
};

struct SweepRecord {
  Cell cell;
  TimeInterval interval;
};

// Per-cell sets of reserved time intervals from higher-priority agents'
// sweeps and endpoint blocks. Mutated only between single-agent searches;
// read-only during a search.
class ReservationTable {
 public:
  // Inserts an interval, merging overlapping/touching reservations so the
  // per-cell lists stay sorted and pairwise disjoint.
  void reserve(Cell cell, TimeInterval interval);

  // Sorted reserved intervals for the cell (empty when none).
  const std::vector<TimeInterval>& reserved(Cell cell) const;

  // Maximal disjoint complement of the reservations within [0, inf), sorted.
  std::vector<TimeInterval> safe_intervals(Cell cell) const;

  // The safe interval containing the whole occupancy interval, or nullopt.
  std::optional<TimeInterval> fits(Cell cell, TimeInterval occupancy) const;

  bool empty() const { return reserved_.empty(); }
  std::string debug_dump_json() const;  // cell -> reserved interval list

 private:
  std::unordered_map<Cell, std::vector<TimeInterval>, CellHash> reserved_;
};

// Cells an agent's disk overlaps, per action: a unit move occupies both
// cells for the whole move; waits/rotates occupy the current cell; the goal
// is held from arrival onward. Adjacent records on a cell are coalesced.
std::vector<SweepRecord> sweep_of_plan(const AgentPlan& plan);

void reserve_plan(ReservationTable& table, const AgentPlan& plan);

// Blanket [0, inf) reservations on the start and goal of every agent that
// has no planned path yet, except `skip_agent` (the one being planned).
void reserve_endpoints(ReservationTable& table, const Instance& instance,
                       int skip_agent, const std::vector<bool>& planned);

// Per-search cache of safe interval lists; single-threaded use only.
class SafeIntervalIndex {
 public:
  explicit SafeIntervalIndex(const ReservationTable& table) : table_(&table) {}

  const std::vector<TimeInterval>& intervals(Cell cell) const;
  // Index of the safe interval containing time t, or -1.
  int find_containing(Cell cell, double t) const;
  const TimeInterval& interval(Cell cell, int id) const { return intervals(cell)[id]; }

 private:
  const ReservationTable* table_;
  mutable std::unordered_map<Cell, std::vector<TimeInterval>, CellHash> cache_;
};

}  // namespace mapfkc
