#include <cmath>
#include <random>

#include <doctest.h>

#include "mapfkc/kinematics.hpp"
#include "support/oracles.hpp"

using namespace mapfkc;

namespace {
const KinematicParams kDefault{2.0, 1.0, 1.0, 0.5, 1.0};
}

TEST_CASE("build_speed_set spans 0..v_max in stp increments") {
  KinematicParams p = kDefault;
  auto set = build_speed_set(p);
  REQUIRE(set.size() == 5);
  CHECK(set[0] == doctest::Approx(0.0));
  CHECK(set[4] == doctest::Approx(2.0));

  p.v_max = 3.0;
  p.speed_step = 1.5;
  set = build_speed_set(p);
  REQUIRE(set.size() == 3);
  CHECK(set[1] == doctest::Approx(1.5));
  CHECK(set[2] == doctest::Approx(3.0));

  // floor(2/0.66) = 3, so the top speed stays below v_max.
  p.v_max = 2.0;
  p.speed_step = 0.66;
  set = build_speed_set(p);
  REQUIRE(set.size() == 4);
  CHECK(set[3] == doctest::Approx(1.98));
}

TEST_CASE("build_speed_set rejects bad parameters") {
  KinematicParams p = kDefault;
  p.speed_step = 3.0;
  CHECK_THROWS_AS(build_speed_set(p), std::invalid_argument);
  p = kDefault;
  p.a_acc = 0.0;
  CHECK_THROWS_AS(build_speed_set(p), std::invalid_argument);
}

TEST_CASE("transition_feasible matches the closed-form condition") {
  CHECK(transition_feasible(0.0, 1.0, 1.0, kDefault));        // implied accel 0.5
  CHECK_FALSE(transition_feasible(0.0, 1.5, 1.0, kDefault));  // 1.125 > 1

  KinematicParams p = kDefault;
  p.a_acc = 1.5;
  CHECK(transition_feasible(1.0, 2.0, 1.0, p));  // exactly at the limit

  CHECK(transition_feasible(0.0, 0.0, 1.0, kDefault));  // always available
}

TEST_CASE("move_time: cruise, accelerating and rest-to-rest moves") {
  CHECK(move_time(1.0, 1.0, 1.0, kDefault) == doctest::Approx(1.0));
  CHECK(move_time(0.0, 1.0, 1.0, kDefault) == doctest::Approx(2.0));
  CHECK(move_time(0.0, 0.0, 1.0, kDefault) == doctest::Approx(2.0));
  CHECK_THROWS_AS(move_time(0.0, 1.5, 1.0, kDefault), std::invalid_argument);
}

TEST_CASE("rest-to-rest time matches the numeric bang-bang oracle") {
  for (const KinematicParams& p :
       {KinematicParams{2.0, 1.0, 1.0, 0.5, 1.0}, KinematicParams{3.0, 1.5, 1.5, 0.5, 1.0},
        KinematicParams{2.0, 2.0, 0.5, 0.5, 1.0}, KinematicParams{1.0, 1.0, 1.0, 0.5, 1.0}}) {
    for (double d : {0.5, 1.0, 2.0, 10.0}) {
      CAPTURE(p.v_max);
      CAPTURE(d);
      CHECK(zero_zero_time(d, p) == doctest::Approx(oracle::bangbang_time(d, p)).epsilon(1e-9));
    }
  }
  // d = 10 with v_max = 1 forces the clamped cruise profile.
  const KinematicParams slow{1.0, 1.0, 1.0, 0.5, 1.0};
  CHECK(zero_zero_time(10.0, slow) == doctest::Approx(2.0 + 9.0).epsilon(1e-9));
}

TEST_CASE("precompute_transitions enumerates exactly the feasible pairs") {
  KinematicParams p = kDefault;
  p.speed_step = 1.0;
  const SpeedSet set = build_speed_set(p);  // [0, 1, 2]
  const TransitionTable table = precompute_transitions(set, 1.0, p);

  CHECK(table.achievable[0] == std::vector<int>{0, 1});
  CHECK(table.achievable[1] == std::vector<int>{0, 1});  // (1,2) needs 1.5 > 1
  CHECK(table.achievable[2] == std::vector<int>{2});     // (2,1) needs -1.5 < -1

  // Table is a memo of the pairwise functions.
  for (int i = 0; i < set.size(); ++i) {
    for (int j = 0; j < set.size(); ++j) {
      CHECK(table.feasible(i, j) == transition_feasible(set[i], set[j], 1.0, p));
      if (table.feasible(i, j)) {
        CHECK(table.move_time[i][j] ==
              doctest::Approx(move_time(set[i], set[j], 1.0, p)).epsilon(1e-12));
        CHECK(table.move_time[i][j] >= 1.0 / p.v_max - 1e-9);
      }
    }
  }
}

TEST_CASE("precompute_transitions degenerate and boundary speed sets") {
  KinematicParams p = kDefault;
  p.v_max = 0.5;
  p.speed_step = 0.5;
  const SpeedSet tiny{{0.0}};
  const TransitionTable table = precompute_transitions(tiny, 1.0, p);
  CHECK(table.achievable[0] == std::vector<int>{0});
  CHECK(table.move_time[0][0] == doctest::Approx(zero_zero_time(1.0, p)));

  KinematicParams p2{3.0, 1.5, 1.5, 1.5, 1.0};
  const SpeedSet set = build_speed_set(p2);  // [0, 1.5, 3]
  const TransitionTable t2 = precompute_transitions(set, 1.0, p2);
  CHECK(t2.feasible(0, 1));  // (0,1.5): 1.125 <= 1.5
  CHECK_FALSE(t2.feasible(1, 2));
}

TEST_CASE("profile_for_move realizes the move times") {
  auto profile = profile_for_move(1.0, 1.0, 1.0, kDefault);
  REQUIRE(profile.segments.size() == 1);
  CHECK(profile.segments[0].accel == doctest::Approx(0.0));
  CHECK(profile.duration() == doctest::Approx(1.0));

  profile = profile_for_move(0.0, 1.0, 1.0, kDefault);
  REQUIRE(profile.segments.size() == 1);
  CHECK(profile.segments[0].accel == doctest::Approx(0.5));
  CHECK(profile.duration() == doctest::Approx(2.0));

  profile = profile_for_move(0.0, 0.0, 1.0, kDefault);
  REQUIRE(profile.segments.size() == 2);
  CHECK(profile.segments[0].accel == doctest::Approx(1.0));
  CHECK(profile.segments[0].duration == doctest::Approx(1.0));
  CHECK(profile.segments[1].accel == doctest::Approx(-1.0));
  CHECK(profile.segments[1].duration == doctest::Approx(1.0));
}

TEST_CASE("profile displacement and duration match move_time within 1e-9") {
  std::mt19937 rng(42);
  const double d = 1.0;
  const SpeedSet set = build_speed_set(kDefault);
  for (int i = 0; i < set.size(); ++i) {
    for (int j = 0; j < set.size(); ++j) {
      if (!transition_feasible(set[i], set[j], d, kDefault)) continue;
      const auto profile = profile_for_move(set[i], set[j], d, kDefault);
      CHECK(profile.displacement() == doctest::Approx(d).epsilon(1e-9));
      CHECK(profile.duration() ==
            doctest::Approx(move_time(set[i], set[j], d, kDefault)).epsilon(1e-9));
      for (const auto& seg : profile.segments) {
        CHECK(seg.accel <= kDefault.a_acc + 1e-9);
        CHECK(seg.accel >= -kDefault.a_dec - 1e-9);
      }
    }
  }
}

TEST_CASE("min_time_segment: trapezoid, triangle and degenerate cases") {
  CHECK(min_time_segment(6.0, 0.0, 0.0, kDefault) == doctest::Approx(5.0));
  CHECK(min_time_segment(3.0, 0.0, 0.0, kDefault) ==
        doctest::Approx(2.0 * std::sqrt(3.0)));
  CHECK(min_time_segment(0.0, 0.0, 0.0, kDefault) == doctest::Approx(0.0));
  CHECK_THROWS_AS(min_time_segment(0.5, 2.0, 0.0, kDefault), std::domain_error);
  CHECK_THROWS_AS(min_time_segment(0.0, 1.0, 0.0, kDefault), std::domain_error);
}

TEST_CASE("min_time_segment agrees with the numeric trapezoid oracle") {
  std::mt19937 rng(7);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (rng() / static_cast<double>(std::mt19937::max()));
  };
  for (int trial = 0; trial < 200; ++trial) {
    KinematicParams p = kDefault;
    p.v_max = uniform(0.5, 3.0);
    p.a_acc = uniform(0.3, 2.0);
    p.a_dec = uniform(0.3, 2.0);
    p.speed_step = p.v_max;
    const double D = uniform(0.1, 12.0);
    const double v_in = uniform(0.0, p.v_max);
    const double v_out = uniform(0.0, p.v_max);
    const auto expected = oracle::segment_time(D, v_in, v_out, p);
    CAPTURE(trial);
    if (!expected) {
      CHECK_THROWS_AS(min_time_segment(D, v_in, v_out, p), std::domain_error);
    } else {
      CHECK(min_time_segment(D, v_in, v_out, p) ==
            doctest::Approx(*expected).epsilon(1e-7));
    }
  }
}

TEST_CASE("move_time is symmetric when a_acc == a_dec") {
  const SpeedSet set = build_speed_set(kDefault);
  for (int i = 0; i < set.size(); ++i) {
    for (int j = 0; j < set.size(); ++j) {
      if (!transition_feasible(set[i], set[j], 1.0, kDefault)) continue;
      CHECK(transition_feasible(set[j], set[i], 1.0, kDefault));
      CHECK(move_time(set[i], set[j], 1.0, kDefault) ==
            doctest::Approx(move_time(set[j], set[i], 1.0, kDefault)));
    }
  }
}

TEST_CASE("move_time is monotone non-increasing in v_i + v_j") {
  const SpeedSet set = build_speed_set(kDefault);
  std::vector<std::pair<double, double>> feasible_pairs;
  for (int i = 0; i < set.size(); ++i) {
    for (int j = 0; j < set.size(); ++j) {
      if (transition_feasible(set[i], set[j], 1.0, kDefault)) {
        feasible_pairs.emplace_back(set[i] + set[j],
                                    move_time(set[i], set[j], 1.0, kDefault));
      }
    }
  }
  for (const auto& [sum_a, t_a] : feasible_pairs) {
    for (const auto& [sum_b, t_b] : feasible_pairs) {
      if (sum_a > sum_b + 1e-12) CHECK(t_a <= t_b + 1e-9);
    }
  }
}

TEST_CASE("continuous relaxation lower-bounds discretized speed sequences") {
  // Any per-cell speed chain over D cells costs at least the continuous
  // minimum over the same distance.
  const KinematicParams p{2.0, 1.0, 1.0, 1.0, 1.0};
  const SpeedSet set = build_speed_set(p);
  for (int cells = 1; cells <= 8; ++cells) {
    const double discrete =
        oracle::straight_line_dp(cells, 0, set.speeds, 1.0, p);
    CHECK(min_time_segment(cells * 1.0, 0.0, 0.0, p) <= discrete + 1e-9);
  }
}
