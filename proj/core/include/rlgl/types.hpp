#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "rlgl/vec2.hpp"

namespace rlgl {

struct RobotParams {
  int id = 0;
  double v_max = 2.0;    // per-axis speed saturation [m/s]
  double u_max = 0.5;    // per-axis input saturation [m/s^2]
  double kappa_true = 0.1;    // actual friction coefficient, hidden from the controller [1/s]
  double kappa_low = 0.0141;  // friction lower bound known to the controller [1/s]
  double kappa_up = 0.2368;   // friction upper bound known to the controller [1/s]
  double eta = 1.0;      // braking caution factor, >= 1
  double gain = 1.0;     // advance-mode lateral damping gain [1/s]
  double gamma1 = 5.0;   // wall barrier rate
  double gamma2 = 5.0;   // robot-robot barrier rate
  double gamma3 = 5.0;   // speed barrier rate
  double gamma4 = 5.0;   // obstacle barrier rate
  double smoothing_eps = 100.0;   // tanh sharpness of the braking law
  bool hard_sign_brake = false;   // brake with sign() instead of tanh
};

enum class RobotStatus { Live, Eliminated, Finished };

struct RobotState {
  Vec2 p;
  Vec2 v;
  RobotStatus status = RobotStatus::Live;
  double status_since = 0.0;  // time of elimination or finish; meaningful once not Live
};

struct Playground {
  double l_x = 5.0;   // field width
  double l_y = 35.0;  // field depth
  double g_y = 25.0;  // finish line ordinate
  double r0 = 0.3;    // robot disk radius
  double d0 = 0.4;    // required center-to-center separation
};

// Final interval whose red light never comes.
constexpr double kNeverRed = std::numeric_limits<double>::infinity();

struct GameSchedule {
  std::vector<double> green_times;  // first entry must be 0
  std::vector<double> red_times;    // same length, strictly interleaved; last may be kNeverRed
  double duration = 80.0;

  int intervals() const { return static_cast<int>(green_times.size()); }
  // 1-based index of the interval containing t: the last green at or before t.
  int interval_of(double t) const;
  double green_time(int k) const { return green_times[static_cast<std::size_t>(k) - 1]; }
  double red_time(int k) const { return red_times[static_cast<std::size_t>(k) - 1]; }
};

struct ScenarioConfig {
  std::vector<RobotParams> robots;
  Playground playground;
  GameSchedule schedule;
  double dt = 0.01;
  double move_eps = 0.01;      // speed above which motion during red is a violation
  double slack_weight = 1e6;
  double cert_tol = 1e-6;      // certification margin on logged barrier values
  std::uint64_t rng_seed = 0;
  int start_rows = 2;
  int start_cols = 11;
};

bool operator==(const RobotParams& a, const RobotParams& b);
bool operator==(const Playground& a, const Playground& b);
bool operator==(const GameSchedule& a, const GameSchedule& b);
bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

}  // namespace rlgl
