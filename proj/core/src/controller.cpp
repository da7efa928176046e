#include "rlgl/controller.hpp"

#include <algorithm>
#include <cmath>

namespace rlgl {

double estimated_braking_time_axis(double v_axis, double u_max, double kappa_low) {
  return std::log1p(std::abs(v_axis) * kappa_low / u_max) / kappa_low;
}

double estimated_braking_time(Vec2 v, double u_max, double kappa_low) {
  return std::max(estimated_braking_time_axis(v.x, u_max, kappa_low),
                  estimated_braking_time_axis(v.y, u_max, kappa_low));
}

ControllerMode update_mode(double t, const RobotState& state, const RobotParams& params,
                           const GameSchedule& schedule, ControllerMode current) {
  const int k = schedule.interval_of(t);
  ControllerMode next = current;
  if (k != current.interval) next = {DriveMode::Advance, kNotTriggered, k};
  if (next.mode == DriveMode::Advance) {
    const double estimate =
        estimated_braking_time(state.v, params.u_max, params.kappa_low);
    if (schedule.red_time(k) - t <= params.eta * estimate) {
      next.mode = DriveMode::Brake;
      next.trigger_time = t;
    }
  }
  return next;
}

namespace {
double sign(double v) { return static_cast<double>(v > 0.0) - static_cast<double>(v < 0.0); }
}  // namespace

ControlInput nominal_input(double /*t*/, const RobotState& state, const RobotParams& params,
                           ControllerMode mode) {
  if (mode.mode == DriveMode::Advance) return {-params.gain * state.v.x, params.u_max};
  if (params.hard_sign_brake)
    return {-params.u_max * sign(state.v.x), -params.u_max * sign(state.v.y)};
  const double e = params.smoothing_eps;
  return {-params.u_max * std::tanh(e * state.v.x), -params.u_max * std::tanh(e * state.v.y)};
}

}  // namespace rlgl
