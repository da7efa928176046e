#pragma once

#include "rlgl/types.hpp"

namespace rlgl {

using ControlInput = Vec2;

// Per-axis clip to [-u_max, u_max]. Idempotent.
ControlInput clamp_input(ControlInput u, double u_max);

// Exact propagation of p' = v, v' = u - kappa*v over one interval of length dt
// with u held constant. Per axis, with w = 1 - e^{-kappa dt}:
//   v+ = e^{-kappa dt} v + w u/kappa
//   p+ = p + (u/kappa) dt + (v - u/kappa) w / kappa
// Status fields pass through untouched.
RobotState step(const RobotState& state, ControlInput u, double kappa, double dt);

}  // namespace rlgl
