#include "mapfkc/plan.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mapfkc {

namespace {
using json = nlohmann::json;

json action_to_json(const Action& a) {
  return {{"type", action_kind_name(a.kind)},
          {"t_start", a.t_start},
          {"t_end", a.t_end},
          {"from", {a.from.x, a.from.y}},
          {"to", {a.to.x, a.to.y}},
          {"v_start", a.v_start},
          {"v_end", a.v_end}};
}

Action action_from_json(const json& j) {
  Action a;
  const std::string type = j.at("type").get<std::string>();
  if (type == "rotate") {
    a.kind = ActionKind::Rotate;
  } else if (type == "wait") {
    a.kind = ActionKind::Wait;
  } else if (type == "move") {
    a.kind = ActionKind::Move;
  } else {
    throw std::runtime_error("plan parse error: unknown action type '" + type + "'");
  }
  a.t_start = j.at("t_start").get<double>();
  a.t_end = j.at("t_end").get<double>();
  a.from = {j.at("from").at(0).get<int>(), j.at("from").at(1).get<int>()};
  a.to = {j.at("to").at(0).get<int>(), j.at("to").at(1).get<int>()};
  a.v_start = j.at("v_start").get<double>();
  a.v_end = j.at("v_end").get<double>();
  return a;
}

}  // namespace

const char* action_kind_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::Rotate: return "rotate";
    case ActionKind::Wait: return "wait";
    case ActionKind::Move: return "move";
  }
  return "?";
}

void Solution::finalize_totals() {
  sum_of_costs = 0.0;
  makespan = 0.0;
  expansions = 0;
  generated = 0;
  for (const auto& a : agents) {
    sum_of_costs += a.cost;
    makespan = std::max(makespan, a.cost);
    expansions += a.stats.expansions;
    generated += a.stats.generated;
  }
}

std::string write_solution_json(const Solution& solution, const SolutionMeta& meta) {
  json doc;
  doc["agents"] = json::array();
  for (const auto& plan : solution.agents) {
    json actions = json::array();
    for (const auto& a : plan.actions) actions.push_back(action_to_json(a));
    doc["agents"].push_back(
        {{"id", plan.agent_id},
         {"start", {plan.start.x, plan.start.y}},
         {"heading", std::string(1, heading_letter(plan.start_heading))},
         {"goal", {plan.goal.x, plan.goal.y}},
         {"cost", plan.cost},
         {"expansions", plan.stats.expansions},
         {"generated", plan.stats.generated},
         {"actions", std::move(actions)}});
  }
  doc["summary"] = {{"sum_of_costs", solution.sum_of_costs},
                    {"makespan", solution.makespan},
                    {"runtime_ms", solution.runtime_ms},
                    {"expansions", solution.expansions},
                    {"success", solution.success}};
  doc["params"] = {{"v_max", meta.kin.v_max},
                   {"a_acc", meta.kin.a_acc},
                   {"a_dec", meta.kin.a_dec},
                   {"speed_step", meta.kin.speed_step},
                   {"rot_time_quarter", meta.kin.rot_time_quarter},
                   {"cell_size", meta.cell_size}};
  if (solution.fixed_speed) doc["params"]["fixed_speed"] = *solution.fixed_speed;
  return doc.dump(2) + "\n";
}

std::pair<Solution, SolutionMeta> parse_solution_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("plan parse error: ") + e.what());
  }
  Solution solution;
  SolutionMeta meta;
  try {
    for (const auto& item : doc.at("agents")) {
      AgentPlan plan;
      plan.agent_id = item.at("id").get<int>();
      plan.start = {item.at("start").at(0).get<int>(), item.at("start").at(1).get<int>()};
      plan.goal = {item.at("goal").at(0).get<int>(), item.at("goal").at(1).get<int>()};
      const std::string h = item.at("heading").get<std::string>();
      const auto heading = h.empty() ? std::nullopt : heading_from_letter(h[0]);
      if (!heading) throw std::runtime_error("plan parse error: bad heading");
      plan.start_heading = *heading;
      plan.cost = item.at("cost").get<double>();
      for (const auto& a : item.at("actions")) plan.actions.push_back(action_from_json(a));
      solution.agents.push_back(std::move(plan));
    }
    const auto& summary = doc.at("summary");
    solution.sum_of_costs = summary.at("sum_of_costs").get<double>();
    solution.makespan = summary.at("makespan").get<double>();
    solution.runtime_ms = summary.at("runtime_ms").get<double>();
    solution.success = summary.at("success").get<bool>();
    const auto& params = doc.at("params");
    meta.kin.v_max = params.at("v_max").get<double>();
    meta.kin.a_acc = params.at("a_acc").get<double>();
    meta.kin.a_dec = params.at("a_dec").get<double>();
    meta.kin.speed_step = params.at("speed_step").get<double>();
    meta.kin.rot_time_quarter = params.at("rot_time_quarter").get<double>();
    meta.cell_size = params.at("cell_size").get<double>();
    if (params.contains("fixed_speed")) {
      solution.fixed_speed = params.at("fixed_speed").get<double>();
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("plan parse error: ") + e.what());
  }
  return {std::move(solution), meta};
}

void save_solution(const Solution& solution, const SolutionMeta& meta,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write plan file: " + path);
  out << write_solution_json(solution, meta);
}

std::pair<Solution, SolutionMeta> load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_solution_json(buf.str());
}

}  // namespace mapfkc
