#include "mapfkc/bench.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "mapfkc/map_gen.hpp"
#include "mapfkc/planner.hpp"

namespace mapfkc {

namespace {

using json = nlohmann::json;

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

struct Job {
  int seed_index = 0;
  double step = 0.0;
  std::string label;
  HeuristicKind kind = HeuristicKind::H2;
  bool baseline = false;
  double fixed_speed = 0.0;
};

}  // namespace

void BenchmarkConfig::validate() const {
  if (agents <= 0) throw std::invalid_argument("bench config: agents must be positive");
  if (seeds.empty()) throw std::invalid_argument("bench config: seeds must be non-empty");
  if (steps.empty() && fixed_speeds.empty()) {
    throw std::invalid_argument("bench config: nothing to run");
  }
  if (!steps.empty() && heuristics.empty()) {
    throw std::invalid_argument("bench config: heuristics must be non-empty");
  }
  if (timeout_s <= 0.0) throw std::invalid_argument("bench config: timeout must be positive");
}

BenchmarkConfig BenchmarkConfig::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("bench config parse error: ") + e.what());
  }
  BenchmarkConfig config;
  config.map = doc.value("map", config.map);
  config.agents = doc.value("agents", config.agents);
  if (doc.contains("seeds")) {
    config.seeds = doc["seeds"].get<std::vector<std::uint32_t>>();
  } else if (doc.contains("seed_count")) {
    const int n = doc["seed_count"].get<int>();
    const std::uint32_t base = doc.value("seed_base", 1u);
    for (int i = 0; i < n; ++i) config.seeds.push_back(base + i);
  }
  config.v_max = doc.value("v_max", config.v_max);
  config.a_acc = doc.value("a_acc", config.a_acc);
  config.a_dec = doc.value("a_dec", config.a_dec);
  config.rot_time_quarter = doc.value("rot_time_quarter", config.rot_time_quarter);
  if (doc.contains("steps")) config.steps = doc["steps"].get<std::vector<double>>();
  if (doc.contains("heuristics")) {
    for (const auto& name : doc["heuristics"]) {
      const auto kind = heuristic_from_name(name.get<std::string>());
      if (!kind) {
        throw std::runtime_error("bench config: unknown heuristic '" +
                                 name.get<std::string>() + "'");
      }
      config.heuristics.push_back(*kind);
    }
  }
  if (doc.contains("fixed_speeds")) {
    config.fixed_speeds = doc["fixed_speeds"].get<std::vector<double>>();
  }
  config.timeout_s = doc.value("timeout_s", config.timeout_s);
  return config;
}

BenchmarkConfig BenchmarkConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bench config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string BenchmarkConfig::to_json_text() const {
  json doc;
  doc["map"] = map;
  doc["agents"] = agents;
  doc["seeds"] = seeds;
  doc["v_max"] = v_max;
  doc["a_acc"] = a_acc;
  doc["a_dec"] = a_dec;
  doc["rot_time_quarter"] = rot_time_quarter;
  doc["steps"] = steps;
  json names = json::array();
  for (auto kind : heuristics) names.push_back(heuristic_name(kind));
  doc["heuristics"] = names;
  doc["fixed_speeds"] = fixed_speeds;
  doc["timeout_s"] = timeout_s;
  return doc.dump(2) + "\n";
}

GridMap resolve_map(const std::string& name_or_path) {
  if (const auto preset = preset_by_name(name_or_path)) {
    return generate_warehouse_map(*preset);
  }
  return GridMap::load(name_or_path);
}

int default_worker_count() {
  if (const char* env = std::getenv("MAPFKC_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

BenchResult run_benchmark(const BenchmarkConfig& config, int workers,
                          const BenchHook& hook) {
  config.validate();
  const GridMap map = resolve_map(config.map);
  const std::string map_label =
      preset_by_name(config.map) ? config.map : "custom";

  KinematicParams base_kin;
  base_kin.v_max = config.v_max;
  base_kin.a_acc = config.a_acc;
  base_kin.a_dec = config.a_dec;
  base_kin.rot_time_quarter = config.rot_time_quarter;
  base_kin.speed_step = config.steps.empty() ? config.v_max : config.steps.front();

  // Instances are generated once per seed and shared by every configuration.
  std::vector<Instance> instances;
  instances.reserve(config.seeds.size());
  for (const std::uint32_t seed : config.seeds) {
    instances.push_back(generate_instance(map, config.agents, seed, base_kin));
  }

  std::vector<Job> jobs;
  for (std::size_t s = 0; s < config.seeds.size(); ++s) {
    for (const double step : config.steps) {
      for (const HeuristicKind kind : config.heuristics) {
        jobs.push_back({static_cast<int>(s), step, heuristic_name(kind), kind,
                        false, 0.0});
      }
    }
    for (const double v : config.fixed_speeds) {
      jobs.push_back({static_cast<int>(s), v, "fixed", HeuristicKind::H2, true, v});
    }
  }

  BenchResult result;
  result.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex hook_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const Job& job = jobs[i];
      const Instance& base_instance = instances[job.seed_index];

      Instance instance = base_instance;
      instance.kin.speed_step = job.baseline ? base_kin.speed_step : job.step;

      PlanOptions options;
      options.timeout_s = config.timeout_s;
      const PriorityOrder order = default_order(instance);
      const Solution solution =
          job.baseline
              ? plan_fixed_speed(instance, job.fixed_speed, job.kind, order, options)
              : plan(instance, job.kind, order, options);

      MetricsRow row;
      row.instance_id = map_label + "-s" + std::to_string(config.seeds[job.seed_index]);
      row.seed = config.seeds[job.seed_index];
      row.step = job.step;
      row.heuristic = job.label;
      row.success = solution.success;
      row.sum_of_costs = solution.sum_of_costs;
      row.makespan = solution.makespan;
      row.runtime_ms = solution.runtime_ms;
      row.expansions = solution.expansions;
      row.generated = solution.generated;
      result.rows[i] = row;

      if (hook) {
        std::lock_guard<std::mutex> lock(hook_mutex);
        hook(row, instance, solution);
      }
    }
  };

  const int n_workers = std::max(1, workers);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  result.aggregates = aggregate_rows(result.rows);
  return result;
}

std::vector<BenchAggregate> aggregate_rows(const std::vector<MetricsRow>& rows) {
  std::map<std::pair<double, std::string>, BenchAggregate> groups;
  std::map<std::pair<double, std::string>, int> successes;
  for (const auto& row : rows) {
    const auto key = std::make_pair(row.step, row.heuristic);
    auto& agg = groups[key];
    agg.step = row.step;
    agg.heuristic = row.heuristic;
    agg.runs += 1;
    agg.mean_runtime_ms += row.runtime_ms;
    agg.mean_expansions += static_cast<double>(row.expansions);
    agg.mean_generated += static_cast<double>(row.generated);
    if (row.success) {
      successes[key] += 1;
      agg.mean_sum_of_costs += row.sum_of_costs;
      agg.mean_makespan += row.makespan;
    }
  }
  std::vector<BenchAggregate> result;
  result.reserve(groups.size());
  for (auto& [key, agg] : groups) {
    const int ok = successes[key];
    agg.success_rate = static_cast<double>(ok) / agg.runs;
    if (ok > 0) {
      agg.mean_sum_of_costs /= ok;
      agg.mean_makespan /= ok;
    }
    agg.mean_runtime_ms /= agg.runs;
    agg.mean_expansions /= agg.runs;
    agg.mean_generated /= agg.runs;
    result.push_back(agg);
  }
  return result;
}

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
  std::ostringstream os;
  os << "instance_id,seed,step,heuristic,success,sum_of_costs,makespan,"
        "runtime_ms,expansions,generated\n";
  for (const auto& r : rows) {
    os << r.instance_id << ',' << r.seed << ',' << format_double(r.step) << ','
       << r.heuristic << ',' << (r.success ? 1 : 0) << ','
       << format_double(r.sum_of_costs) << ',' << format_double(r.makespan) << ','
       << format_double(r.runtime_ms) << ',' << r.expansions << ',' << r.generated
       << '\n';
  }
  return os.str();
}

std::string aggregates_csv(const std::vector<BenchAggregate>& aggregates) {
  std::ostringstream os;
  os << "step,heuristic,runs,success_rate,mean_sum_of_costs,mean_makespan,"
        "mean_runtime_ms,mean_expansions,mean_generated\n";
  for (const auto& a : aggregates) {
    os << format_double(a.step) << ',' << a.heuristic << ',' << a.runs << ','
       << format_double(a.success_rate) << ',' << format_double(a.mean_sum_of_costs)
       << ',' << format_double(a.mean_makespan) << ','
       << format_double(a.mean_runtime_ms) << ',' << format_double(a.mean_expansions)
       << ',' << format_double(a.mean_generated) << '\n';
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace mapfkc
