#pragma once

#include <cmath>
#include <vector>

namespace mapfkc {

// Absolute slack for feasibility and time comparisons, so that boundary
// transitions (implied acceleration exactly at the limit) stay feasible
// regardless of the binary representation of the speed step.
inline constexpr double kKinematicTol = 1e-9;

struct KinematicParams {
  double v_max = 2.0;             // m/s
  double a_acc = 1.0;             // m/s^2, maximum acceleration
  double a_dec = 1.0;             // m/s^2, maximum deceleration (positive)
  double speed_step = 0.5;        // m/s, discretization granularity
  double rot_time_quarter = 1.0;  // seconds per 90-degree in-place rotation

  void validate() const;
};

// Discretized speed set V = {0, stp, 2*stp, ..., floor(v_max/stp)*stp}.
struct SpeedSet {
  std::vector<double> speeds;

  int size() const { return static_cast<int>(speeds.size()); }
  double operator[](int i) const { return speeds[i]; }
};

SpeedSet build_speed_set(const KinematicParams& params);

// Per-pair feasibility and minimal traversal times over one cell of length d.
// Feasible (i,j) pairs are those whose single fixed acceleration
// (v_j^2 - v_i^2) / (2d) lies within [-a_dec, a_acc]; (0,0) is always
// feasible via a max-acceleration bang-bang profile.
struct TransitionTable {
  // achievable[i] = ascending speed indices reachable from speed i over one cell.
  std::vector<std::vector<int>> achievable;
  // move_time[i][j] = seconds for the i->j traversal; NaN when infeasible.
  std::vector<std::vector<double>> move_time;

  bool feasible(int i, int j) const { return !std::isnan(move_time[i][j]); }
  double min_move_time() const;
};

bool transition_feasible(double v_i, double v_j, double d, const KinematicParams& params);

// Traversal time for a feasible pair: 2d/(v_i+v_j) when the speeds are not
// both zero, otherwise the rest-to-rest bang-bang time (with a cruise phase
// at v_max when the bang-bang peak would exceed it).
// Throws std::invalid_argument on an infeasible pair.
double move_time(double v_i, double v_j, double d, const KinematicParams& params);

// Rest-to-rest traversal time over distance d.
double zero_zero_time(double d, const KinematicParams& params);

TransitionTable precompute_transitions(const SpeedSet& speeds, double d,
                                       const KinematicParams& params);

struct ProfileSegment {
  double duration = 0.0;
  double v_start = 0.0;
  double accel = 0.0;
};

struct MotionProfile {
  std::vector<ProfileSegment> segments;

  double duration() const;
  double displacement() const;
};

// Piecewise-constant-acceleration profile realizing move_time(v_i, v_j, d):
// a single segment for v_i + v_j > 0, a bang-bang (or bang-cruise-bang)
// profile for the (0,0) pair.
MotionProfile profile_for_move(double v_i, double v_j, double d,
                               const KinematicParams& params);

// Minimum time to traverse a straight segment of length D starting at v_in
// and ending at v_out, under |a| limits and v <= v_max, with continuous
// speeds (trapezoid/triangle profile).
// Throws std::domain_error when v_out is not reachable from v_in within D.
double min_time_segment(double D, double v_in, double v_out,
                        const KinematicParams& params);

// Distance needed to brake from v to rest at maximum deceleration.
inline double brake_distance(double v, const KinematicParams& params) {
  return v * v / (2.0 * params.a_dec);
}

// Immutable bundle of parameters, speed set and transition tables, built
// once per solve and shared read-only across searches.
struct KinematicModel {
  KinematicParams params;
  double cell_size = 1.0;
  SpeedSet speeds;
  TransitionTable table;

  static KinematicModel build(const KinematicParams& params, double cell_size = 1.0);

  double speed(int idx) const { return speeds[idx]; }
  int speed_count() const { return speeds.size(); }
};

}  // namespace mapfkc
