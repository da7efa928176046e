#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "rlgl/types.hpp"

namespace rlgl {

// Thrown when the constraint geometry degenerates (coincident centers).
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RowKind { PlaygroundX, PlaygroundY, Pair, VelX, VelY, Obstacle };

// One linear inequality a . u <= b on the robot's own input. Every row is
// robust to the unknown friction: b is computed with the worst admissible
// kappa, so satisfying the row enforces the barrier for the true value.
struct ConstraintRow {
  Vec2 a;
  double b = 0.0;
  RowKind kind = RowKind::Pair;
  int other = -1;  // partner robot id for Pair / Obstacle rows
  bool softenable = true;
};

// Barrier values at one instant, logged for post-hoc certification.
struct BarrierSnapshot {
  double t = 0.0;
  double h1x = 0.0;  // wall clearance, x axis (squared-length units)
  double h1y = 0.0;  // wall clearance, y axis
  double h3x = 0.0;  // speed headroom, x axis (squared-speed units)
  double h3y = 0.0;  // speed headroom, y axis
  std::vector<std::pair<int, double>> h2;  // live partner id -> separation margin [m]
  std::vector<std::pair<int, double>> h4;  // obstacle id -> separation margin [m]
};

struct PlaygroundRows {
  ConstraintRow x, y;
  double h1x = 0.0, h1y = 0.0;
  double h1x_dot = 0.0, h1y_dot = 0.0;
};

// Keep-inside rows for both axes. With q = p - l/2 (offset from the center
// line) and reach = l/2 - 1.1 r0:
//   h = reach^2 - q^2,  hdot = -2 q v
//   2 q . u <= -2 kappa_up |q v| - 2 v^2 + gamma1^2 h + 2 gamma1 hdot
PlaygroundRows playground_rows(const RobotState& state, const RobotParams& params,
                               const Playground& playground);

struct PairRow {
  ConstraintRow row;
  double h2 = 0.0;
  double h2_dot = 0.0;
};

// Separation row between robots i and j, written on i's input only. With
// pij = pi - pj, vij = vi - vj, d = |pij|, h = d - d0, hdot = pij.vij / d:
//   -pij . u_i <= share * b_full,  share = u_max_i / (u_max_i + u_max_j)
//   b_full = -kappa_up |pij.vij| - (kappa_up - kappa_low) |pij.vj|
//            + |vij|^2 - (pij.vij)^2 / d^2 + gamma2^2 d h + 2 gamma2 d hdot
// Throws GeometryError when d = 0.
PairRow pairwise_row(const RobotState& self, const RobotState& other, const RobotParams& params,
                     const RobotParams& other_params, double d0);

struct VelocityRows {
  ConstraintRow x, y;
  double h3x = 0.0, h3y = 0.0;
};

// Speed caps per axis, relative degree one:
//   h = v_max^2 - v^2,  2 v . u <= 2 kappa_low v^2 + gamma3 h
VelocityRows velocity_rows(const RobotState& state, const RobotParams& params);

struct ObstacleRow {
  ConstraintRow row;
  double h4 = 0.0;
};

// Separation row against a stationary obstacle: the pairwise row with the
// partner pinned at rest, no bound splitting, and rate gamma4.
ObstacleRow obstacle_row(const RobotState& state, Vec2 obstacle_p, const RobotParams& params,
                         double d0);

struct Obstacle {
  int id = -1;
  Vec2 p;
};

struct Assembly {
  std::vector<ConstraintRow> rows;
  BarrierSnapshot snapshot;
};

// All rows for robot i in fixed order: playground x/y, one pair row per other
// live robot, velocity x/y, one row per obstacle. Dead partners must be passed
// as obstacles, not states; the snapshot records every barrier value used.
Assembly assemble(int i, const std::vector<RobotState>& states,
                  const std::vector<RobotParams>& params, const Playground& playground,
                  const std::vector<Obstacle>& obstacles, double t);

}  // namespace rlgl
