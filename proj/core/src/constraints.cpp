#include "rlgl/constraints.hpp"

#include <cmath>
#include <sstream>

namespace rlgl {

namespace {

struct AxisRow {
  double a = 0.0, b = 0.0, h = 0.0, hdot = 0.0;
};

AxisRow playground_axis(double p, double v, double length, double margin, double kappa_up,
                        double gamma) {
  AxisRow out;
  const double q = p - 0.5 * length;
  const double reach = 0.5 * length - margin;
  out.h = reach * reach - q * q;
  out.hdot = -2.0 * q * v;
  out.a = 2.0 * q;
  out.b = -2.0 * kappa_up * std::abs(q * v) - 2.0 * v * v + gamma * gamma * out.h +
          2.0 * gamma * out.hdot;
  return out;
}

}  // namespace

PlaygroundRows playground_rows(const RobotState& state, const RobotParams& params,
                               const Playground& playground) {
  const double margin = 1.1 * playground.r0;
  const AxisRow x = playground_axis(state.p.x, state.v.x, playground.l_x, margin,
                                    params.kappa_up, params.gamma1);
  const AxisRow y = playground_axis(state.p.y, state.v.y, playground.l_y, margin,
                                    params.kappa_up, params.gamma1);
  PlaygroundRows out;
  out.x = {{x.a, 0.0}, x.b, RowKind::PlaygroundX, -1, true};
  out.y = {{0.0, y.a}, y.b, RowKind::PlaygroundY, -1, true};
  out.h1x = x.h;
  out.h1y = y.h;
  out.h1x_dot = x.hdot;
  out.h1y_dot = y.hdot;
  return out;
}

PairRow pairwise_row(const RobotState& self, const RobotState& other, const RobotParams& params,
                     const RobotParams& other_params, double d0) {
  const Vec2 pij = self.p - other.p;
  const Vec2 vij = self.v - other.v;
  const double d = norm(pij);
  if (!(d > 0.0)) throw GeometryError("coincident robot centers");
  const double pv = dot(pij, vij);
  const double ku = params.kappa_up;
  const double kl = params.kappa_low;
  const double g = params.gamma2;
  PairRow out;
  out.h2 = d - d0;
  out.h2_dot = pv / d;
  const double b_full = -ku * std::abs(pv) - (ku - kl) * std::abs(dot(pij, other.v)) +
                        norm_sq(vij) - pv * pv / (d * d) + g * g * d * out.h2 +
                        2.0 * g * d * out.h2_dot;
  const double share = params.u_max / (params.u_max + other_params.u_max);
  out.row = {-pij, share * b_full, RowKind::Pair, other_params.id, true};
  return out;
}

VelocityRows velocity_rows(const RobotState& state, const RobotParams& params) {
  VelocityRows out;
  const double vv = params.v_max * params.v_max;
  out.h3x = vv - state.v.x * state.v.x;
  out.h3y = vv - state.v.y * state.v.y;
  const double kl = params.kappa_low;
  const double g = params.gamma3;
  out.x = {{2.0 * state.v.x, 0.0}, 2.0 * kl * state.v.x * state.v.x + g * out.h3x,
           RowKind::VelX, -1, true};
  out.y = {{0.0, 2.0 * state.v.y}, 2.0 * kl * state.v.y * state.v.y + g * out.h3y,
           RowKind::VelY, -1, true};
  return out;
}

ObstacleRow obstacle_row(const RobotState& state, Vec2 obstacle_p, const RobotParams& params,
                         double d0) {
  RobotParams self = params;
  self.gamma2 = params.gamma4;  // obstacle rows decay at gamma4
  RobotParams rest;
  rest.u_max = 0.0;  // partner contributes nothing, so no bound splitting
  RobotState obstacle;
  obstacle.p = obstacle_p;
  PairRow pair = pairwise_row(state, obstacle, self, rest, d0);
  ObstacleRow out;
  out.row = pair.row;
  out.row.kind = RowKind::Obstacle;
  out.row.other = -1;
  out.h4 = pair.h2;
  return out;
}

Assembly assemble(int i, const std::vector<RobotState>& states,
                  const std::vector<RobotParams>& params, const Playground& playground,
                  const std::vector<Obstacle>& obstacles, double t) {
  const RobotState& self = states[static_cast<std::size_t>(i)];
  const RobotParams& own = params[static_cast<std::size_t>(i)];
  Assembly out;
  out.snapshot.t = t;
  out.rows.reserve(states.size() + obstacles.size() + 4);

  const PlaygroundRows pg = playground_rows(self, own, playground);
  out.rows.push_back(pg.x);
  out.rows.push_back(pg.y);
  out.snapshot.h1x = pg.h1x;
  out.snapshot.h1y = pg.h1y;

  for (std::size_t j = 0; j < states.size(); ++j) {
    if (static_cast<int>(j) == i || states[j].status != RobotStatus::Live) continue;
    try {
      PairRow pair = pairwise_row(self, states[j], own, params[j], playground.d0);
      out.rows.push_back(pair.row);
      out.snapshot.h2.emplace_back(params[j].id, pair.h2);
    } catch (const GeometryError&) {
      std::ostringstream os;
      os << "robots " << own.id << " and " << params[j].id << " coincident at t = " << t;
      throw GeometryError(os.str());
    }
  }

  const VelocityRows vel = velocity_rows(self, own);
  out.rows.push_back(vel.x);
  out.rows.push_back(vel.y);
  out.snapshot.h3x = vel.h3x;
  out.snapshot.h3y = vel.h3y;

  for (const Obstacle& ob : obstacles) {
    try {
      ObstacleRow row = obstacle_row(self, ob.p, own, playground.d0);
      row.row.other = ob.id;
      out.rows.push_back(row.row);
      out.snapshot.h4.emplace_back(ob.id, row.h4);
    } catch (const GeometryError&) {
      std::ostringstream os;
      os << "robot " << own.id << " coincident with obstacle " << ob.id << " at t = " << t;
      throw GeometryError(os.str());
    }
  }
  return out;
}

}  // namespace rlgl
