#include "rlgl/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace rlgl {

ControlInput clamp_input(ControlInput u, double u_max) {
  return {std::clamp(u.x, -u_max, u_max), std::clamp(u.y, -u_max, u_max)};
}

RobotState step(const RobotState& state, ControlInput u, double kappa, double dt) {
  const double w = -std::expm1(-kappa * dt);  // 1 - e^{-kappa dt}, accurate for small kappa*dt
  RobotState out = state;
  const double ux[2] = {u.x, u.y};
  const double vx[2] = {state.v.x, state.v.y};
  const double px[2] = {state.p.x, state.p.y};
  double vn[2], pn[2];
  for (int m = 0; m < 2; ++m) {
    const double uk = ux[m] / kappa;  // terminal velocity on this axis
    // convex-combination form: exact at the equilibrium v = u/kappa
    vn[m] = vx[m] + w * (uk - vx[m]);
    pn[m] = px[m] + uk * dt + (vx[m] - uk) * w / kappa;
  }
  out.v = {vn[0], vn[1]};
  out.p = {pn[0], pn[1]};
  return out;
}

}  // namespace rlgl
