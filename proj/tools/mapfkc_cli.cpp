#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mapfkc/bench.hpp"
#include "mapfkc/instance.hpp"
#include "mapfkc/map_gen.hpp"
#include "mapfkc/planner.hpp"
#include "mapfkc/reservation.hpp"
#include "mapfkc/validator.hpp"

namespace {

using namespace mapfkc;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitPlanningFailure = 2;

struct SolveArgs {
  std::string map_path;
  std::string scen_path;
  double v_max = 2.0;
  double acc = 1.0;
  double dec = 1.0;
  double step = 0.5;
  double rot_time = 1.0;
  std::string heuristic = "h2";
  std::optional<std::uint32_t> order_seed;
  std::optional<double> fixed_speed;
  std::string out_path = "plan.json";
  std::string dump_reservations;
  bool force = false;
  double timeout_s = 60.0;
};

int run_solve(const SolveArgs& args) {
  const GridMap map = GridMap::load(args.map_path);
  Instance instance;
  instance.map = map;
  instance.agents = load_scenario(args.scen_path);
  instance.kin.v_max = args.v_max;
  instance.kin.a_acc = args.acc;
  instance.kin.a_dec = args.dec;
  instance.kin.speed_step = args.step;
  instance.kin.rot_time_quarter = args.rot_time;
  instance.validate();

  const auto heuristic = heuristic_from_name(args.heuristic);
  if (!heuristic) {
    std::cerr << "unknown heuristic '" << args.heuristic << "' (use h1|h2|h3)\n";
    return kExitInputError;
  }

  const auto wf = is_well_formed(instance);
  if (!wf.ok) {
    if (!args.force) {
      std::cerr << "instance is not well-formed: agent " << wf.failing_agent
                << " has no endpoint-free path; completeness is not guaranteed."
                << " Re-run with --force to plan anyway.\n";
      return kExitInputError;
    }
    std::cerr << "warning: planning on a non-well-formed instance (--force)\n";
  }

  const PriorityOrder order = args.order_seed
                                  ? shuffled_order(instance, *args.order_seed)
                                  : default_order(instance);
  PlanOptions options;
  options.timeout_s = args.timeout_s;

  const Solution solution =
      args.fixed_speed
          ? plan_fixed_speed(instance, *args.fixed_speed, *heuristic, order, options)
          : plan(instance, *heuristic, order, options);

  SolutionMeta meta{instance.kin, map.cell_size()};
  save_solution(solution, meta, args.out_path);

  if (!args.dump_reservations.empty()) {
    ReservationTable table;
    for (const auto& agent_plan : solution.agents) reserve_plan(table, agent_plan);
    write_file(args.dump_reservations, table.debug_dump_json());
  }

  std::cout << (solution.success ? "solved " : "FAILED ") << solution.agents.size()
            << " agents, sum_of_costs=" << solution.sum_of_costs
            << " makespan=" << solution.makespan
            << " runtime_ms=" << solution.runtime_ms << "\n";
  if (!solution.success) {
    std::cerr << "no path for agent " << solution.failed_agent << "\n";
    return kExitPlanningFailure;
  }
  return kExitOk;
}

int run_validate(const std::string& plan_path, const std::string& map_path,
                 const std::string& scen_path) {
  const auto [solution, meta] = load_solution(plan_path);
  Instance instance;
  instance.map = GridMap::load(map_path);
  instance.agents = load_scenario(scen_path);
  instance.kin = meta.kin;
  instance.validate();

  const auto violations = validate_solution(solution, instance);
  if (violations.empty()) {
    std::cout << "plan is valid: " << solution.agents.size() << " agents, 0 violations\n";
    return kExitOk;
  }
  std::cerr << violation_report(violations);
  std::cerr << violations.size() << " violation(s)\n";
  return kExitInputError;
}

struct GenmapArgs {
  std::string preset = "map1";
  int row_gap = -1;
  int col_gap = -1;
  int agents = 20;
  std::uint32_t seed = 1;
  std::string out_map;
  std::string out_scen;
};

int run_genmap(const GenmapArgs& args) {
  const auto preset = preset_by_name(args.preset);
  if (!preset) {
    std::cerr << "unknown preset '" << args.preset << "' (use map1|map2|map3)\n";
    return kExitInputError;
  }
  const GridMap map = generate_warehouse_map(*preset, args.row_gap, args.col_gap);
  const std::string map_path =
      args.out_map.empty() ? args.preset + ".map" : args.out_map;
  const std::string scen_path =
      args.out_scen.empty() ? args.preset + ".scen.json" : args.out_scen;
  map.save(map_path);

  const Instance instance = generate_instance(map, args.agents, args.seed);
  save_scenario(instance.agents, scen_path);
  std::cout << "wrote " << map_path << " (" << map.width() << "x" << map.height()
            << ", " << map.blocked_count() << " blocked cells) and " << scen_path
            << " (" << args.agents << " agents, seed " << args.seed << ")\n";
  return kExitOk;
}

struct BenchArgs {
  std::string config_path;
  std::string map;
  int agents = 0;
  std::string seeds;
  int seed_count = 0;
  double v_max = 0.0;
  double acc = 0.0;
  double dec = 0.0;
  double rot_time = 0.0;
  std::string steps;
  std::string heuristics;
  std::string fixed_speeds;
  double timeout_s = 0.0;
  std::string out_csv = "metrics.csv";
  std::string out_agg = "aggregates.csv";
};

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> result;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (!item.empty()) result.push_back(std::stod(item));
  }
  return result;
}

int run_bench(const BenchArgs& args, const CLI::App* cmd) {
  BenchmarkConfig config;
  if (!args.config_path.empty()) {
    config = BenchmarkConfig::from_json_file(args.config_path);
  }
  // Explicit flags override config-file values.
  if (cmd->count("--map")) config.map = args.map;
  if (cmd->count("--agents")) config.agents = args.agents;
  if (cmd->count("--seeds")) {
    config.seeds.clear();
    for (double s : parse_double_list(args.seeds)) {
      config.seeds.push_back(static_cast<std::uint32_t>(s));
    }
  }
  if (cmd->count("--seed-count")) {
    config.seeds.clear();
    for (int i = 0; i < args.seed_count; ++i) config.seeds.push_back(1 + i);
  }
  if (cmd->count("--vmax")) config.v_max = args.v_max;
  if (cmd->count("--acc")) config.a_acc = args.acc;
  if (cmd->count("--dec")) config.a_dec = args.dec;
  if (cmd->count("--rot-time")) config.rot_time_quarter = args.rot_time;
  if (cmd->count("--steps")) config.steps = parse_double_list(args.steps);
  if (cmd->count("--heuristics")) {
    config.heuristics.clear();
    std::string item;
    std::istringstream is(args.heuristics);
    while (std::getline(is, item, ',')) {
      const auto kind = heuristic_from_name(item);
      if (!kind) {
        std::cerr << "unknown heuristic '" << item << "'\n";
        return kExitInputError;
      }
      config.heuristics.push_back(*kind);
    }
  }
  if (cmd->count("--fixed-speeds")) {
    config.fixed_speeds = parse_double_list(args.fixed_speeds);
  }
  if (cmd->count("--timeout")) config.timeout_s = args.timeout_s;

  const int workers = default_worker_count();
  std::cout << "running " << config.seeds.size() << " seeds on " << config.map
            << " with " << workers << " workers\n";
  const BenchResult result = run_benchmark(config, workers);

  write_file(args.out_csv, metrics_csv(result.rows));
  write_file(args.out_agg, aggregates_csv(result.aggregates));

  std::printf("%8s %-6s %6s %10s %12s %12s %12s\n", "step", "heur", "runs",
              "success", "mean_cost", "mean_rt_ms", "mean_expand");
  for (const auto& a : result.aggregates) {
    std::printf("%8.3g %-6s %6d %9.0f%% %12.3f %12.3f %12.0f\n", a.step,
                a.heuristic.c_str(), a.runs, 100.0 * a.success_rate,
                a.mean_sum_of_costs, a.mean_runtime_ms, a.mean_expansions);
  }
  std::cout << "wrote " << args.out_csv << " and " << args.out_agg << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mapfkc: multi-agent path finding with kinematic constraints"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand(
      "solve", "Plan collision-free kinematically feasible paths");
  solve_cmd->add_option("--map", solve_args.map_path, "MovingAI-style map file")
      ->required();
  solve_cmd->add_option("--scen", solve_args.scen_path, "scenario JSON file")
      ->required();
  solve_cmd->add_option("--vmax", solve_args.v_max, "maximum speed, m/s");
  solve_cmd->add_option("--acc", solve_args.acc, "maximum acceleration, m/s^2");
  solve_cmd->add_option("--dec", solve_args.dec, "maximum deceleration, m/s^2");
  solve_cmd->add_option("--step", solve_args.step, "speed discretization step, m/s");
  solve_cmd->add_option("--rot-time", solve_args.rot_time,
                        "seconds per 90-degree rotation");
  solve_cmd->add_option("--heuristic", solve_args.heuristic, "h1|h2|h3");
  solve_cmd->add_option("--order-seed", solve_args.order_seed,
                        "shuffle the priority order with this seed");
  solve_cmd->add_option("--fixed-speed", solve_args.fixed_speed,
                        "fixed-speed baseline with infinite acceleration");
  solve_cmd->add_option("--out", solve_args.out_path, "output plan JSON");
  solve_cmd->add_option("--dump-reservations", solve_args.dump_reservations,
                        "write the final reservation table as JSON");
  solve_cmd->add_flag("--force", solve_args.force,
                      "plan even when the instance is not well-formed");
  solve_cmd->add_option("--timeout", solve_args.timeout_s, "solve timeout, seconds");

  std::string validate_plan, validate_map, validate_scen;
  auto* validate_cmd =
      app.add_subcommand("validate", "Check a plan for kinematic and collision violations");
  validate_cmd->add_option("plan", validate_plan, "plan JSON file")->required();
  validate_cmd->add_option("map", validate_map, "map file")->required();
  validate_cmd->add_option("scen", validate_scen, "scenario JSON file")->required();

  GenmapArgs genmap_args;
  auto* genmap_cmd =
      app.add_subcommand("genmap", "Generate a warehouse map preset and a scenario");
  genmap_cmd->add_option("--preset", genmap_args.preset, "map1|map2|map3");
  genmap_cmd->add_option("--row-gap", genmap_args.row_gap,
                         "inter-block row spacing (-1 = even)");
  genmap_cmd->add_option("--col-gap", genmap_args.col_gap,
                         "inter-block column spacing (-1 = even)");
  genmap_cmd->add_option("--agents", genmap_args.agents, "number of agents");
  genmap_cmd->add_option("--seed", genmap_args.seed, "scenario RNG seed");
  genmap_cmd->add_option("--out-map", genmap_args.out_map, "output map path");
  genmap_cmd->add_option("--out-scen", genmap_args.out_scen, "output scenario path");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Run the benchmark cross-product and emit metrics CSVs");
  bench_cmd->add_option("--config", bench_args.config_path, "bench config JSON");
  bench_cmd->add_option("--map", bench_args.map, "map preset or file");
  bench_cmd->add_option("--agents", bench_args.agents, "agents per instance");
  bench_cmd->add_option("--seeds", bench_args.seeds, "comma-separated seed list");
  bench_cmd->add_option("--seed-count", bench_args.seed_count, "seeds 1..N");
  bench_cmd->add_option("--vmax", bench_args.v_max, "maximum speed");
  bench_cmd->add_option("--acc", bench_args.acc, "maximum acceleration");
  bench_cmd->add_option("--dec", bench_args.dec, "maximum deceleration");
  bench_cmd->add_option("--rot-time", bench_args.rot_time, "rotation time");
  bench_cmd->add_option("--steps", bench_args.steps, "comma-separated speed steps");
  bench_cmd->add_option("--heuristics", bench_args.heuristics,
                        "comma-separated heuristic list");
  bench_cmd->add_option("--fixed-speeds", bench_args.fixed_speeds,
                        "comma-separated baseline fixed speeds");
  bench_cmd->add_option("--timeout", bench_args.timeout_s, "per-instance timeout");
  bench_cmd->add_option("--out-csv", bench_args.out_csv, "metrics CSV path");
  bench_cmd->add_option("--out-agg", bench_args.out_agg, "aggregates CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return run_solve(solve_args);
    if (validate_cmd->parsed()) return run_validate(validate_plan, validate_map, validate_scen);
    if (genmap_cmd->parsed()) return run_genmap(genmap_args);
    if (bench_cmd->parsed()) return run_bench(bench_args, bench_cmd);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
