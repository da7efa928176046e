#pragma once

#include <array>
#include <vector>

#include "rlgl/constraints.hpp"
#include "rlgl/vec2.hpp"

namespace rlgl {

struct QpProblem {
  Vec2 u_nominal;
  std::vector<ConstraintRow> rows;
  double u_box = 0.5;        // hard per-axis input bound
  double slack_weight = 1e6;
};

// Minimizer of ||u - u_nominal||^2 + slack_weight * sum slack_r^2 subject to
// a_r . u <= b_r + slack_r, slack_r >= 0 and the hard box. When rows + box are
// feasible the slack vector is identically zero and u_star solves the
// unrelaxed projection exactly.
struct QpSolution {
  Vec2 u_star;
  std::vector<double> slack;        // per row; nonzero only when rows conflict with the box
  std::vector<int> active_set;      // row indices tight at the solution
  double objective = 0.0;
  bool hard_feasible = true;
  std::vector<double> row_multipliers;      // KKT multiplier per row
  std::array<double, 4> box_multipliers{};  // bounds +x, -x, +y, -y
};

QpSolution solve(const QpProblem& problem);

struct KktReport {
  double stationarity = 0.0;
  double primal_feasibility = 0.0;
  double dual_feasibility = 0.0;
  double complementary_slackness = 0.0;
  double max_residual() const;
};

// Independent optimality certificate computed from problem + solution alone.
KktReport verify_kkt(const QpProblem& problem, const QpSolution& solution);

}  // namespace rlgl
