#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

namespace testsup {

using rlgl::ConstraintRow;
using rlgl::QpProblem;
using rlgl::Vec2;

rlgl::RobotState euler_step(const rlgl::RobotState& state, rlgl::ControlInput u, double kappa,
                            double dt, int substeps) {
  rlgl::RobotState s = state;
  const double h = dt / substeps;
  for (int i = 0; i < substeps; ++i) {
    const Vec2 a{u.x - kappa * s.v.x, u.y - kappa * s.v.y};
    s.p = s.p + h * s.v;
    s.v = s.v + h * a;
  }
  return s;
}

namespace {

double rk4_brake(double v, double u_max, double kappa, double h) {
  const auto f = [&](double x) { return -u_max - kappa * x; };
  const double k1 = f(v);
  const double k2 = f(v + 0.5 * h * k1);
  const double k3 = f(v + 0.5 * h * k2);
  const double k4 = f(v + h * k3);
  return v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

double braking_stop_time(double v0, double u_max, double kappa) {
  if (v0 <= 0.0) return 0.0;
  const double h = 1e-3;
  double t = 0.0;
  double v = v0;
  while (true) {
    const double vn = rk4_brake(v, u_max, kappa, h);
    if (vn <= 0.0) break;
    v = vn;
    t += h;
    if (t > 1e5) throw std::logic_error("braking_stop_time: no stop found");
  }
  double lo = 0.0, hi = h;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (rk4_brake(v, u_max, kappa, mid) > 0.0 ? lo : hi) = mid;
  }
  return t + 0.5 * (lo + hi);
}

bool halfplane_feasible(const std::vector<ConstraintRow>& rows, double u_box) {
  std::vector<Vec2> poly{{-u_box, -u_box}, {u_box, -u_box}, {u_box, u_box}, {-u_box, u_box}};
  for (const ConstraintRow& row : rows) {
    if (row.a.x == 0.0 && row.a.y == 0.0) {
      if (row.b < 0.0) return false;
      continue;
    }
    std::vector<Vec2> clipped;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 cur = poly[i];
      const Vec2 nxt = poly[(i + 1) % n];
      const double gc = dot(row.a, cur) - row.b;
      const double gn = dot(row.a, nxt) - row.b;
      if (gc <= 0.0) clipped.push_back(cur);
      if ((gc < 0.0 && gn > 0.0) || (gc > 0.0 && gn < 0.0)) {
        const double s = gc / (gc - gn);
        clipped.push_back(cur + s * (nxt - cur));
      }
    }
    poly = std::move(clipped);
    if (poly.empty()) return false;
  }
  return true;
}

double penalized_objective(const QpProblem& problem, Vec2 u) {
  double f = norm_sq(u - problem.u_nominal);
  for (const ConstraintRow& row : problem.rows) {
    const double g = dot(row.a, u) - row.b;
    if (g > 0.0) f += problem.slack_weight * g * g;
  }
  return f;
}

namespace {

struct LineBest {
  bool feasible = false;
  double x = 0.0;
  double value = 0.0;
};

// Best feasible x on the scanline, or infeasible when the row intervals and
// the box have empty intersection there.
LineBest hard_line_best(const QpProblem& pb, double y) {
  double lo = -pb.u_box, hi = pb.u_box;
  for (const ConstraintRow& row : pb.rows) {
    const double rhs = row.b - row.a.y * y;
    if (row.a.x == 0.0) {
      if (rhs < 0.0) return {};
      continue;
    }
    const double x0 = rhs / row.a.x;
    if (row.a.x > 0.0) {
      hi = std::min(hi, x0);
    } else {
      lo = std::max(lo, x0);
    }
    if (lo > hi) return {};
  }
  const double x = std::clamp(pb.u_nominal.x, lo, hi);
  const double dx = x - pb.u_nominal.x;
  const double dy = y - pb.u_nominal.y;
  return {true, x, dx * dx + dy * dy};
}

// Minimizes the penalized objective in x for fixed y: piecewise quadratic
// between row breakpoints, minimized per segment.
LineBest soft_line_best(const QpProblem& pb, double y) {
  const double box = pb.u_box;
  std::vector<double> knots{-box, box};
  for (const ConstraintRow& row : pb.rows) {
    if (row.a.x == 0.0) continue;
    const double x0 = (row.b - row.a.y * y) / row.a.x;
    if (x0 > -box && x0 < box) knots.push_back(x0);
  }
  std::sort(knots.begin(), knots.end());
  LineBest best{true, 0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
    const double xl = knots[s], xr = knots[s + 1];
    if (!(xr > xl)) continue;
    const double xm = 0.5 * (xl + xr);
    double qa = 1.0;
    double qb = -2.0 * pb.u_nominal.x;
    for (const ConstraintRow& row : pb.rows) {
      const double c = row.a.y * y - row.b;
      if (row.a.x * xm + c > 0.0) {
        qa += pb.slack_weight * row.a.x * row.a.x;
        qb += pb.slack_weight * 2.0 * row.a.x * c;
      }
    }
    const double xs = std::clamp(-qb / (2.0 * qa), xl, xr);
    const double val = penalized_objective(pb, {xs, y});
    if (val < best.value) {
      best.value = val;
      best.x = xs;
    }
  }
  return best;
}

}  // namespace

GridResult grid_qp_oracle(const QpProblem& pb) {
  const double box = pb.u_box;
  const bool hard = halfplane_feasible(pb.rows, box);
  const auto line_best = [&](double y) { return hard ? hard_line_best(pb, y) : soft_line_best(pb, y); };

  const int n = std::max(1, static_cast<int>(std::lround(2.0 * box / 1e-3)));
  const double step0 = 2.0 * box / n;
  double best_x = 0.0, best_y = 0.0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double y = -box + step0 * i;
    const LineBest lb = line_best(y);
    if (lb.feasible && lb.value < best_val) {
      best_val = lb.value;
      best_x = lb.x;
      best_y = y;
    }
  }
  if (!std::isfinite(best_val)) throw std::logic_error("grid_qp_oracle: no feasible scanline");

  // Down to 1e-7 in y: steep penalty valleys can tilt up to ~3e3 in |dx/dy|,
  // so this keeps the induced x error safely below the 2e-3 oracle tolerance.
  for (double step = step0 / 10.0; step >= 0.99e-7; step /= 10.0) {
    const double lo = std::max(-box, best_y - 10.0 * step);
    const double hi = std::min(box, best_y + 10.0 * step);
    for (double y = lo; y <= hi + 0.5 * step; y += step) {
      const LineBest lb = line_best(y);
      if (lb.feasible && lb.value < best_val) {
        best_val = lb.value;
        best_x = lb.x;
        best_y = y;
      }
    }
  }

  GridResult out;
  out.u = {best_x, best_y};
  out.hard_feasible = hard;
  out.objective = hard ? norm_sq(out.u - pb.u_nominal) : best_val;
  return out;
}

QpProblem random_qp(rlgl::SplitMix64& rng, int max_rows) {
  constexpr double kPi = 3.14159265358979323846;
  QpProblem pb;
  pb.u_box = rng.next_in(0.2, 0.5);
  pb.slack_weight = 1e6;
  pb.u_nominal = {rng.next_in(-0.8, 0.8), rng.next_in(-0.8, 0.8)};
  const bool contradict = rng.next_unit() < 0.3;
  const Vec2 anchor{rng.next_in(-0.9, 0.9) * pb.u_box, rng.next_in(-0.9, 0.9) * pb.u_box};
  const int budget = max_rows - 2;
  const int n = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(budget));
  for (int r = 0; r < n; ++r) {
    const double ang = rng.next_in(0.0, 2.0 * kPi);
    const double len = rng.next_in(0.5, 3.0);
    const Vec2 a{len * std::cos(ang), len * std::sin(ang)};
    const double margin = rng.next_in(0.02, 1.0);
    pb.rows.push_back({a, dot(a, anchor) + margin, rlgl::RowKind::Pair, -1, true});
  }
  if (contradict) {
    const double ang = rng.next_in(0.0, 2.0 * kPi);
    const double len = rng.next_in(0.5, 3.0);
    const Vec2 a{len * std::cos(ang), len * std::sin(ang)};
    const double c = rng.next_in(-0.3, 0.3) * len;
    const double gap = rng.next_in(0.1, 0.5) * len;
    pb.rows.push_back({a, c, rlgl::RowKind::Pair, -1, true});
    pb.rows.push_back({-a, -c - gap, rlgl::RowKind::Pair, -1, true});
  }
  return pb;
}

}  // namespace testsup
