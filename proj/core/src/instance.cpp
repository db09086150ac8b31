#include "mapfkc/instance.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace mapfkc {

namespace {

using json = nlohmann::json;

// Deterministic cross-platform bounded draw (std::uniform_int_distribution
// is not portable across standard libraries).
std::uint32_t bounded(std::mt19937& rng, std::uint32_t n) {
  const std::uint32_t limit = std::numeric_limits<std::uint32_t>::max() -
                              std::numeric_limits<std::uint32_t>::max() % n;
  std::uint32_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

// BFS over the grid treating `avoid` cells as blocked; returns the path
// start..goal or empty when unreachable.
std::vector<Cell> bfs_path(const GridMap& map, Cell start, Cell goal,
                           const std::unordered_set<Cell, CellHash>& avoid) {
  if (start == goal) return {start};
  std::vector<int> parent(static_cast<std::size_t>(map.width()) * map.height(), -1);
  std::deque<Cell> queue{start};
  parent[map.index(start)] = static_cast<int>(map.index(start));
  while (!queue.empty()) {
    const Cell cur = queue.front();
    queue.pop_front();
    for (const auto& [next, h] : map.neighbors(cur)) {
      (void)h;
      if (parent[map.index(next)] != -1) continue;
      if (avoid.count(next) && next != goal) continue;
      parent[map.index(next)] = static_cast<int>(map.index(cur));
      if (next == goal) {
        std::vector<Cell> path{goal};
        Cell c = cur;
        while (true) {
          path.push_back(c);
          const int p = parent[map.index(c)];
          if (p == static_cast<int>(map.index(c))) break;
          c = {p % map.width(), p / map.width()};
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(next);
    }
  }
  return {};
}

}  // namespace

void Instance::validate() const {
  kin.validate();
  std::unordered_set<int> ids;
  std::unordered_set<Cell, CellHash> starts, goals;
  for (const auto& a : agents) {
    if (!map.free_cell(a.start) || !map.free_cell(a.goal)) {
      throw std::invalid_argument("agent " + std::to_string(a.id) +
                                  " has an out-of-bounds or blocked endpoint");
    }
    if (!ids.insert(a.id).second) {
      throw std::invalid_argument("duplicate agent id " + std::to_string(a.id));
    }
    if (!starts.insert(a.start).second) {
      throw std::invalid_argument("two agents share start " + to_string(a.start));
    }
    if (!goals.insert(a.goal).second) {
      throw std::invalid_argument("two agents share goal " + to_string(a.goal));
    }
  }
}

WellFormedness is_well_formed(const Instance& instance) {
  WellFormedness result;
  result.witness.reserve(instance.agents.size());
  for (std::size_t i = 0; i < instance.agents.size(); ++i) {
    std::unordered_set<Cell, CellHash> avoid;
    for (std::size_t j = 0; j < instance.agents.size(); ++j) {
      if (j == i) continue;
      avoid.insert(instance.agents[j].start);
      avoid.insert(instance.agents[j].goal);
    }
    const auto& a = instance.agents[i];
    if (avoid.count(a.start) || avoid.count(a.goal)) {
      result.failing_agent = a.id;
      return result;
    }
    auto path = bfs_path(instance.map, a.start, a.goal, avoid);
    if (path.empty()) {
      result.failing_agent = a.id;
      return result;
    }
    result.witness.push_back(std::move(path));
  }
  result.ok = true;
  return result;
}

Instance generate_instance(const GridMap& map, int n_agents, std::uint32_t seed,
                           const KinematicParams& kin) {
  if (n_agents < 0) throw std::invalid_argument("n_agents must be non-negative");

  // Candidate endpoints: free cells next to an obstacle, plus column-0 stations.
  std::vector<Cell> candidates;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const Cell c{x, y};
      if (!map.free_cell(c)) continue;
      bool near_obstacle = false;
      for (Heading h : kAllHeadings) {
        const Cell n = step(c, h);
        if (map.in_bounds(n) && map.blocked(n)) {
          near_obstacle = true;
          break;
        }
      }
      if (near_obstacle || x == 0) candidates.push_back(c);
    }
  }

  const int needed = 2 * n_agents;
  if (static_cast<int>(candidates.size()) < needed) {
    throw std::runtime_error("map has " + std::to_string(candidates.size()) +
                             " candidate endpoints, need " + std::to_string(needed));
  }

  std::mt19937 rng(seed);
  constexpr int kMaxRetries = 64;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    // Partial Fisher-Yates: the first 2n slots become the draw.
    std::vector<Cell> pool = candidates;
    for (int k = 0; k < needed; ++k) {
      const auto j = k + bounded(rng, static_cast<std::uint32_t>(pool.size() - k));
      std::swap(pool[k], pool[j]);
    }
    Instance instance;
    instance.map = map;
    instance.kin = kin;
    instance.agents.reserve(n_agents);
    for (int i = 0; i < n_agents; ++i) {
      AgentTask task;
      task.id = i;
      task.start = pool[2 * i];
      task.goal = pool[2 * i + 1];
      task.start_heading = kAllHeadings[bounded(rng, 4)];
      instance.agents.push_back(task);
    }
    if (n_agents == 0 || is_well_formed(instance).ok) return instance;
  }
  throw std::runtime_error("no well-formed instance found after bounded retries");
}

std::string write_scenario_json(const std::vector<AgentTask>& agents) {
  json doc;
  doc["agents"] = json::array();
  for (const auto& a : agents) {
    doc["agents"].push_back({{"id", a.id},
                             {"start", {a.start.x, a.start.y}},
                             {"heading", std::string(1, heading_letter(a.start_heading))},
                             {"goal", {a.goal.x, a.goal.y}}});
  }
  return doc.dump(2) + "\n";
}

std::vector<AgentTask> parse_scenario_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("scenario parse error: ") + e.what());
  }
  if (!doc.contains("agents") || !doc["agents"].is_array()) {
    throw std::runtime_error("scenario parse error: missing 'agents' array");
  }
  std::vector<AgentTask> agents;
  for (const auto& item : doc["agents"]) {
    AgentTask task;
    task.id = item.at("id").get<int>();
    task.start = {item.at("start").at(0).get<int>(), item.at("start").at(1).get<int>()};
    task.goal = {item.at("goal").at(0).get<int>(), item.at("goal").at(1).get<int>()};
    const std::string h = item.at("heading").get<std::string>();
    const auto heading = h.empty() ? std::nullopt : heading_from_letter(h[0]);
    if (!heading) throw std::runtime_error("scenario parse error: bad heading '" + h + "'");
    task.start_heading = *heading;
    agents.push_back(task);
  }
  return agents;
}

void save_scenario(const std::vector<AgentTask>& agents, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << write_scenario_json(agents);
}

std::vector<AgentTask> load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_json(buf.str());
}

}  // namespace mapfkc
