#pragma once

#include "rlgl/dynamics.hpp"
#include "rlgl/types.hpp"

namespace rlgl {

enum class DriveMode { Advance, Brake };

constexpr double kNotTriggered = std::numeric_limits<double>::infinity();

struct ControllerMode {
  DriveMode mode = DriveMode::Advance;
  double trigger_time = kNotTriggered;  // when Brake latched within the current interval
  int interval = 0;                     // 1-based interval the mode belongs to; 0 = fresh
};

// Worst-case stopping time on one axis under full braking u = -u_max sign(v)
// with the friction coefficient pinned at its lower bound:
//   t = (1/kappa_low) log(1 + |v| kappa_low / u_max).
// Decreasing in the true friction, so this over-estimates the actual stop.
double estimated_braking_time_axis(double v_axis, double u_max, double kappa_low);

// Max across axes; the axes brake independently.
double estimated_braking_time(Vec2 v, double u_max, double kappa_low);

// Latches Brake at the first sample where red_time - t <= eta * estimate and
// resets to Advance when t enters a new interval.
ControllerMode update_mode(double t, const RobotState& state, const RobotParams& params,
                           const GameSchedule& schedule, ControllerMode current);

// Advance: damp lateral drift and push downfield, (-gain * v_x, +u_max).
// Brake: u = -u_max tanh(smoothing_eps * v) per axis, or -u_max sign(v) when
// the hard-sign variant is enabled.
ControlInput nominal_input(double t, const RobotState& state, const RobotParams& params,
                           ControllerMode mode);

}  // namespace rlgl
