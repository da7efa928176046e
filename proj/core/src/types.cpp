#include "rlgl/types.hpp"

#include <algorithm>

namespace rlgl {

int GameSchedule::interval_of(double t) const {
  auto it = std::upper_bound(green_times.begin(), green_times.end(), t);
  auto k = it - green_times.begin();  // number of greens at or before t
  if (k < 1) k = 1;
  return static_cast<int>(k);
}

bool operator==(const RobotParams& a, const RobotParams& b) {
  return a.id == b.id && a.v_max == b.v_max && a.u_max == b.u_max &&
         a.kappa_true == b.kappa_true && a.kappa_low == b.kappa_low && a.kappa_up == b.kappa_up &&
         a.eta == b.eta && a.gain == b.gain && a.gamma1 == b.gamma1 && a.gamma2 == b.gamma2 &&
         a.gamma3 == b.gamma3 && a.gamma4 == b.gamma4 && a.smoothing_eps == b.smoothing_eps &&
         a.hard_sign_brake == b.hard_sign_brake;
}

bool operator==(const Playground& a, const Playground& b) {
  return a.l_x == b.l_x && a.l_y == b.l_y && a.g_y == b.g_y && a.r0 == b.r0 && a.d0 == b.d0;
}

bool operator==(const GameSchedule& a, const GameSchedule& b) {
  return a.green_times == b.green_times && a.red_times == b.red_times &&
         a.duration == b.duration;
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  return a.robots == b.robots && a.playground == b.playground && a.schedule == b.schedule &&
         a.dt == b.dt && a.move_eps == b.move_eps && a.slack_weight == b.slack_weight &&
         a.cert_tol == b.cert_tol && a.rng_seed == b.rng_seed && a.start_rows == b.start_rows &&
         a.start_cols == b.start_cols;
}

}  // namespace rlgl
