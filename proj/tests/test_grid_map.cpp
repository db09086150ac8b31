#include <random>

#include <doctest.h>

#include "mapfkc/grid_map.hpp"
#include "mapfkc/instance.hpp"
#include "mapfkc/map_gen.hpp"
#include "support/oracles.hpp"

using namespace mapfkc;

TEST_CASE("parse_map reads MovingAI text") {
  const GridMap map = GridMap::parse(
      "type octile\nheight 3\nwidth 3\nmap\n...\n.@.\n...\n");
  CHECK(map.width() == 3);
  CHECK(map.height() == 3);
  CHECK(map.blocked({1, 1}));
  CHECK(map.blocked_count() == 1);

  const GridMap empty = GridMap::parse("type octile\nheight 2\nwidth 2\nmap\n..\n..\n");
  CHECK(empty.blocked_count() == 0);
}

TEST_CASE("parse_map reports the offending line") {
  CHECK_THROWS_WITH_AS(
      GridMap::parse("type octile\nheight 2\nwidth 3\nmap\n...\n..\n"),
      doctest::Contains("line 6"), std::runtime_error);
  CHECK_THROWS_AS(GridMap::parse("type octile\nheight 2\nwidth 2\nmap\n..\n.X\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(GridMap::parse("height 2\nwidth 2\nmap\n..\n..\n"),
                  std::runtime_error);
}

TEST_CASE("parse of serialize is the identity on random maps") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int w = 1 + rng() % 12;
    const int h = 1 + rng() % 12;
    GridMap map(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (rng() % 4 == 0) map.set_blocked({x, y});
      }
    }
    const GridMap back = GridMap::parse(map.serialize());
    REQUIRE(back.width() == w);
    REQUIRE(back.height() == h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        CHECK(back.blocked({x, y}) == map.blocked({x, y}));
      }
    }
  }
}

TEST_CASE("neighbors come back in N,E,S,W order") {
  const GridMap map = GridMap::parse("type octile\nheight 3\nwidth 3\nmap\n...\n...\n...\n");
  const auto mid = map.neighbors({1, 1});
  REQUIRE(mid.size() == 4);
  CHECK(mid[0].second == Heading::North);
  CHECK(mid[0].first == Cell{1, 0});
  CHECK(mid[3].second == Heading::West);

  const auto corner = map.neighbors({0, 0});
  CHECK(corner.size() == 2);

  const GridMap walled =
      GridMap::parse("type octile\nheight 3\nwidth 3\nmap\n.@.\n@.@\n.@.\n");
  CHECK(walled.neighbors({1, 1}).empty());
}

TEST_CASE("is_well_formed succeeds on an open map") {
  Instance instance;
  instance.map = GridMap(5, 5);
  instance.agents = {{0, {0, 0}, Heading::East, {4, 4}},
                     {1, {4, 0}, Heading::West, {0, 4}}};
  const auto wf = is_well_formed(instance);
  CHECK(wf.ok);
  REQUIRE(wf.witness.size() == 2);
  CHECK(wf.witness[0].front() == Cell{0, 0});
  CHECK(wf.witness[0].back() == Cell{4, 4});
}

TEST_CASE("is_well_formed rejects a blocked corridor") {
  // 1-wide corridor with agent 1's goal between agent 0's endpoints.
  Instance instance;
  instance.map = GridMap::parse("type octile\nheight 1\nwidth 5\nmap\n.....\n");
  instance.agents = {{0, {0, 0}, Heading::East, {4, 0}},
                     {1, {3, 0}, Heading::East, {2, 0}}};
  const auto wf = is_well_formed(instance);
  CHECK_FALSE(wf.ok);

  // The independent BFS oracle agrees: deleting agent 1's endpoints
  // disconnects agent 0.
  const auto path = oracle::bfs_path(instance.map, {0, 0}, {4, 0}, {{3, 0}, {2, 0}});
  CHECK(path.empty());
}

TEST_CASE("is_well_formed with start == goal yields a trivial witness") {
  Instance instance;
  instance.map = GridMap(3, 3);
  instance.agents = {{0, {1, 1}, Heading::North, {1, 1}}};
  const auto wf = is_well_formed(instance);
  CHECK(wf.ok);
  REQUIRE(wf.witness.size() == 1);
  CHECK(wf.witness[0] == std::vector<Cell>{{1, 1}});
}

TEST_CASE("is_well_formed agrees with the BFS oracle on random instances") {
  std::mt19937 rng(23);
  int disagreements = 0;
  for (int trial = 0; trial < 100; ++trial) {
    GridMap map(4 + rng() % 4, 4 + rng() % 4);
    for (int y = 0; y < map.height(); ++y) {
      for (int x = 0; x < map.width(); ++x) {
        if (rng() % 5 == 0) map.set_blocked({x, y});
      }
    }
    Instance instance;
    instance.map = map;
    std::vector<Cell> free;
    for (int y = 0; y < map.height(); ++y) {
      for (int x = 0; x < map.width(); ++x) {
        if (map.free_cell({x, y})) free.push_back({x, y});
      }
    }
    if (free.size() < 4) continue;
    for (int a = 0; a < 2; ++a) {
      Cell start, goal;
      do {
        start = free[rng() % free.size()];
        goal = free[rng() % free.size()];
      } while (start == goal);
      instance.agents.push_back({a, start, Heading::East, goal});
    }

    bool oracle_ok = true;
    for (int a = 0; a < 2 && oracle_ok; ++a) {
      std::vector<Cell> avoid;
      for (int b = 0; b < 2; ++b) {
        if (b == a) continue;
        avoid.push_back(instance.agents[b].start);
        avoid.push_back(instance.agents[b].goal);
      }
      oracle_ok = !oracle::bfs_path(instance.map, instance.agents[a].start,
                                    instance.agents[a].goal, avoid)
                       .empty();
    }
    if (is_well_formed(instance).ok != oracle_ok) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("generate_instance is deterministic and well-formed") {
  const auto preset = preset_by_name("map1");
  REQUIRE(preset.has_value());
  const GridMap map = generate_warehouse_map(*preset);
  CHECK(map.height() == 24);
  CHECK(map.width() == 46);
  CHECK(map.blocked_count() == 25 * 2 * 5);

  const Instance a = generate_instance(map, 20, 7);
  const Instance b = generate_instance(map, 20, 7);
  REQUIRE(a.agents.size() == 20);
  for (int i = 0; i < 20; ++i) {
    CHECK(a.agents[i].start == b.agents[i].start);
    CHECK(a.agents[i].goal == b.agents[i].goal);
    CHECK(a.agents[i].start_heading == b.agents[i].start_heading);
  }
  CHECK(is_well_formed(a).ok);

  // Every endpoint is obstacle-adjacent or a column-0 station.
  auto is_candidate = [&](Cell c) {
    if (c.x == 0) return true;
    for (Heading h : kAllHeadings) {
      const Cell n = step(c, h);
      if (map.in_bounds(n) && map.blocked(n)) return true;
    }
    return false;
  };
  for (const auto& agent : a.agents) {
    CHECK(is_candidate(agent.start));
    CHECK(is_candidate(agent.goal));
  }

  const Instance empty = generate_instance(map, 0, 3);
  CHECK(empty.agents.empty());
}

TEST_CASE("generate_instance fails cleanly when candidates run out") {
  const GridMap open(3, 3);  // no obstacles: only the 3 station cells qualify
  CHECK_THROWS_AS(generate_instance(open, 4, 1), std::runtime_error);
}

TEST_CASE("warehouse presets tile their maps") {
  for (const char* name : {"map1", "map2", "map3"}) {
    const auto preset = preset_by_name(name);
    REQUIRE(preset.has_value());
    const GridMap map = generate_warehouse_map(*preset);
    CHECK(map.height() == preset->height);
    CHECK(map.width() == preset->width);
    const std::size_t expected = static_cast<std::size_t>(preset->block_rows) *
                                 preset->block_cols * preset->block_h * preset->block_w;
    CHECK(map.blocked_count() == expected);
    // Column 0 stays free for stations.
    for (int y = 0; y < map.height(); ++y) CHECK(map.free_cell({0, y}));
  }
  CHECK_FALSE(preset_by_name("map9").has_value());
  CHECK_THROWS_AS(generate_warehouse_map({"x", 10, 10, 5, 5, 2, 5}, -1, -1),
                  std::runtime_error);
}

TEST_CASE("scenario JSON round-trips") {
  std::vector<AgentTask> agents = {{0, {1, 2}, Heading::East, {3, 4}},
                                   {1, {5, 6}, Heading::North, {7, 8}}};
  const auto parsed = parse_scenario_json(write_scenario_json(agents));
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].start == Cell{1, 2});
  CHECK(parsed[1].start_heading == Heading::North);
  CHECK(parsed[1].goal == Cell{7, 8});
  CHECK_THROWS_AS(parse_scenario_json("{"), std::runtime_error);
  CHECK_THROWS_AS(parse_scenario_json("{\"agents\": 1}"), std::runtime_error);
}
