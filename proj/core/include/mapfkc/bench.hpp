#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mapfkc/heuristics.hpp"
#include "mapfkc/instance.hpp"
#include "mapfkc/plan.hpp"

namespace mapfkc {

// One benchmark campaign: a map (preset name or file path), per-seed random
// instances and a cross-product of solver configurations.
struct BenchmarkConfig {
  std::string map = "map1";
  int agents = 20;
  std::vector<std::uint32_t> seeds;
  double v_max = 2.0;
  double a_acc = 1.0;
  double a_dec = 1.0;
  double rot_time_quarter = 1.0;
  std::vector<double> steps;
  std::vector<HeuristicKind> heuristics;
  std::vector<double> fixed_speeds;  // baseline runs, heuristic column "fixed"
  double timeout_s = 60.0;

  void validate() const;
  static BenchmarkConfig from_json_text(const std::string& text);
  static BenchmarkConfig from_json_file(const std::string& path);
  std::string to_json_text() const;
};

// One row per (instance x configuration) run.
struct MetricsRow {
  std::string instance_id;
  std::uint32_t seed = 0;
  double step = 0.0;  // speed step; the fixed speed for baseline rows
  std::string heuristic;
  bool success = false;
  double sum_of_costs = 0.0;
  double makespan = 0.0;
  double runtime_ms = 0.0;
  std::uint64_t expansions = 0;
  std::uint64_t generated = 0;
};

struct BenchAggregate {
  double step = 0.0;
  std::string heuristic;
  int runs = 0;
  double success_rate = 0.0;
  double mean_sum_of_costs = 0.0;  // over successful runs
  double mean_makespan = 0.0;
  double mean_runtime_ms = 0.0;  // over all runs
  double mean_expansions = 0.0;
  double mean_generated = 0.0;
};

struct BenchResult {
  std::vector<MetricsRow> rows;
  std::vector<BenchAggregate> aggregates;
};

// Called once per finished run (serialized); rows still land in
// deterministic job order regardless of worker interleaving.
using BenchHook =
    std::function<void(const MetricsRow&, const Instance&, const Solution&)>;

BenchResult run_benchmark(const BenchmarkConfig& config, int workers,
                          const BenchHook& hook = nullptr);

std::vector<BenchAggregate> aggregate_rows(const std::vector<MetricsRow>& rows);

std::string metrics_csv(const std::vector<MetricsRow>& rows);
std::string aggregates_csv(const std::vector<BenchAggregate>& aggregates);
void write_file(const std::string& path, const std::string& content);

// MAPFKC_WORKERS, else hardware concurrency.
int default_worker_count();

// Resolves a preset name to a generated map, or loads a map file.
GridMap resolve_map(const std::string& name_or_path);

}  // namespace mapfkc
