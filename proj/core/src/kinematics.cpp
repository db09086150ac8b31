#include "mapfkc/kinematics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace mapfkc {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

void KinematicParams::validate() const {
  if (v_max <= 0.0 || a_acc <= 0.0 || a_dec <= 0.0 || speed_step <= 0.0 ||
      rot_time_quarter <= 0.0) {
    throw std::invalid_argument("kinematic parameters must be strictly positive");
  }
  if (speed_step > v_max + kKinematicTol) {
    throw std::invalid_argument("speed_step must not exceed v_max");
  }
}

SpeedSet build_speed_set(const KinematicParams& params) {
  params.validate();
  const int top = static_cast<int>(std::floor(params.v_max / params.speed_step + kKinematicTol));
  SpeedSet set;
  set.speeds.reserve(top + 1);
  for (int k = 0; k <= top; ++k) {
    set.speeds.push_back(k * params.speed_step);
  }
  return set;
}

bool transition_feasible(double v_i, double v_j, double d, const KinematicParams& params) {
  if (v_i == 0.0 && v_j == 0.0) return true;
  const double a = (v_j - v_i) * (v_i + v_j) / (2.0 * d);
  return a >= -params.a_dec - kKinematicTol && a <= params.a_acc + kKinematicTol;
}

double zero_zero_time(double d, const KinematicParams& params) {
  const double peak = std::sqrt(2.0 * params.a_acc * params.a_dec * d /
                                (params.a_acc + params.a_dec));
  if (peak <= params.v_max + kKinematicTol) {
    return (1.0 / params.a_acc + 1.0 / params.a_dec) * peak;
  }
  // The bang-bang peak would exceed v_max: accelerate to v_max, cruise,
  // then decelerate.
  const double v = params.v_max;
  const double ramp_dist = v * v / (2.0 * params.a_acc) + v * v / (2.0 * params.a_dec);
  return v / params.a_acc + v / params.a_dec + (d - ramp_dist) / v;
}

double move_time(double v_i, double v_j, double d, const KinematicParams& params) {
  if (!transition_feasible(v_i, v_j, d, params)) {
    throw std::invalid_argument("infeasible speed transition " + std::to_string(v_i) +
                                " -> " + std::to_string(v_j) + " over d=" + std::to_string(d));
  }
  if (v_i + v_j > 0.0) return 2.0 * d / (v_i + v_j);
  return zero_zero_time(d, params);
}

TransitionTable precompute_transitions(const SpeedSet& speeds, double d,
                                       const KinematicParams& params) {
  const int n = speeds.size();
  TransitionTable table;
  table.achievable.assign(n, {});
  table.move_time.assign(n, std::vector<double>(n, kNaN));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!transition_feasible(speeds[i], speeds[j], d, params)) continue;
      table.achievable[i].push_back(j);
      table.move_time[i][j] = move_time(speeds[i], speeds[j], d, params);
    }
  }
  return table;
}

double TransitionTable::min_move_time() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& row : move_time) {
    for (double t : row) {
      if (!std::isnan(t)) best = std::min(best, t);
    }
  }
  return best;
}

double MotionProfile::duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

double MotionProfile::displacement() const {
  double x = 0.0;
  for (const auto& s : segments) {
    x += s.v_start * s.duration + 0.5 * s.accel * s.duration * s.duration;
  }
  return x;
}

MotionProfile profile_for_move(double v_i, double v_j, double d,
                               const KinematicParams& params) {
  if (!transition_feasible(v_i, v_j, d, params)) {
    throw std::invalid_argument("infeasible speed transition for profile");
  }
  MotionProfile profile;
  if (v_i + v_j > 0.0) {
    const double t = 2.0 * d / (v_i + v_j);
    profile.segments.push_back({t, v_i, (v_j - v_i) / t});
    return profile;
  }
  const double peak = std::sqrt(2.0 * params.a_acc * params.a_dec * d /
                                (params.a_acc + params.a_dec));
  if (peak <= params.v_max + kKinematicTol) {
    profile.segments.push_back({peak / params.a_acc, 0.0, params.a_acc});
    profile.segments.push_back({peak / params.a_dec, peak, -params.a_dec});
  } else {
    const double v = params.v_max;
    const double ramp_dist = v * v / (2.0 * params.a_acc) + v * v / (2.0 * params.a_dec);
    profile.segments.push_back({v / params.a_acc, 0.0, params.a_acc});
    profile.segments.push_back({(d - ramp_dist) / v, v, 0.0});
    profile.segments.push_back({v / params.a_dec, v, -params.a_dec});
  }
  return profile;
}

double min_time_segment(double D, double v_in, double v_out,
                        const KinematicParams& params) {
  if (D < 0.0) throw std::domain_error("segment length must be non-negative");
  if (D <= kKinematicTol) {
    if (std::abs(v_in - v_out) <= kKinematicTol) return 0.0;
    throw std::domain_error("cannot change speed over a zero-length segment");
  }
  const double in2 = v_in * v_in;
  const double out2 = v_out * v_out;
  if (out2 > in2 + 2.0 * params.a_acc * D + kKinematicTol ||
      in2 > out2 + 2.0 * params.a_dec * D + kKinematicTol) {
    throw std::domain_error("(v_in, v_out, D) combination is unreachable");
  }
  const double peak2 = (2.0 * params.a_acc * params.a_dec * D + params.a_dec * in2 +
                        params.a_acc * out2) /
                       (params.a_acc + params.a_dec);
  const double peak = std::sqrt(std::max(peak2, 0.0));
  if (peak <= params.v_max + kKinematicTol) {
    return std::max(peak - v_in, 0.0) / params.a_acc +
           std::max(peak - v_out, 0.0) / params.a_dec;
  }
  const double v = params.v_max;
  const double ramp_dist =
      (v * v - in2) / (2.0 * params.a_acc) + (v * v - out2) / (2.0 * params.a_dec);
  return (v - v_in) / params.a_acc + (v - v_out) / params.a_dec +
         (D - ramp_dist) / v;
}

KinematicModel KinematicModel::build(const KinematicParams& params, double cell_size) {
  params.validate();
  if (cell_size <= 0.0) throw std::invalid_argument("cell_size must be positive");
  KinematicModel model;
  model.params = params;
  model.cell_size = cell_size;
  model.speeds = build_speed_set(params);
  model.table = precompute_transitions(model.speeds, cell_size, params);
  return model;
}

}  // namespace mapfkc
