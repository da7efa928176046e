// Release gate: one line per criterion, exit 0 only if every one passes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "rlgl/constraints.hpp"
#include "rlgl/controller.hpp"
#include "rlgl/dynamics.hpp"
#include "rlgl/emit.hpp"
#include "rlgl/game.hpp"
#include "rlgl/qp.hpp"
#include "rlgl/rng.hpp"
#include "rlgl/scenario_io.hpp"
#include "test_support.hpp"

namespace {

namespace fs = std::filesystem;
using rlgl::RobotParams;
using rlgl::RobotState;
using rlgl::RobotStatus;
using rlgl::Vec2;

int g_failures = 0;

void report(int n, const char* name, bool pass, const std::string& detail) {
  std::printf("[%d] %s: %s%s%s%s\n", n, name, pass ? "PASS" : "FAIL",
              detail.empty() ? "" : " (", detail.c_str(), detail.empty() ? "" : ")");
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Criterion 1: the 22-robot reference game certifies cleanly and quickly.
rlgl::SimulationLog criterion_certification() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto config = rlgl::reference_scenario(42);
  auto log = rlgl::run(config);
  const auto safety = rlgl::certify(log, 1e-6);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = !log.abort_reason.has_value() && !log.records.empty() &&
                    safety.certified() && safety.slack_event_count == 0 && wall < 60.0;
  std::ostringstream d;
  d << "failures=" << safety.failures.size() << " slack_events=" << safety.slack_event_count
    << " wall=" << fmt(wall) << "s min_h2=" << fmt(safety.min_h2.value);
  if (log.abort_reason) d << " aborted: " << *log.abort_reason;
  report(1, "reference-game certification", pass, d.str());
  return log;
}

// Criterion 2: cautious robots never get caught; reckless ones sometimes do.
void criterion_compliance() {
  auto cautious = rlgl::reference_scenario(42);
  for (auto& r : cautious.robots) r.eta = 3.0;
  const auto log = rlgl::run(cautious);

  int eliminations = 0;
  for (const auto& e : log.events)
    if (e.kind == rlgl::EventKind::Eliminated) ++eliminations;

  double max_red_speed = 0.0;
  bool instants_ok = true;
  for (double t_red : cautious.schedule.red_times) {
    if (!(t_red < cautious.schedule.duration)) continue;
    const auto idx = static_cast<std::size_t>(std::llround(t_red / cautious.dt));
    if (idx >= log.records.size() || log.records[idx].t != t_red) {
      instants_ok = false;
      break;
    }
    for (const auto& st : log.records[idx].states) {
      if (st.status != RobotStatus::Live) continue;
      max_red_speed = std::max(max_red_speed, norm(st.v));
    }
  }
  const bool cautious_ok = instants_ok && eliminations == 0 && max_red_speed <= cautious.move_eps;

  int strict_eliminations = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto reckless = rlgl::reference_scenario(seed);
    for (auto& r : reckless.robots) {
      r.eta = 1.0 + (r.eta - 1.0) * 0.1;  // maps the [1, 1.5) draw into [1, 1.05)
      r.kappa_true = r.kappa_up;
    }
    for (const auto& e : rlgl::run(reckless).events)
      if (e.kind == rlgl::EventKind::Eliminated) ++strict_eliminations;
  }

  std::ostringstream d;
  d << "eta=3: eliminations=" << eliminations << " max red-instant speed="
    << fmt(max_red_speed) << "; eta in [1,1.05]: eliminations=" << strict_eliminations
    << " across seeds 1..10";
  report(2, "rule-compliance spectrum", cautious_ok && strict_eliminations >= 1, d.str());
}

// Criterion 3: the friction-lower-bound estimate never under-predicts.
void criterion_braking() {
  rlgl::SplitMix64 rng(1001);
  bool pass = true;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.next_in(0.0, 2.0);
    const double u_max = rng.next_in(0.2, 0.5);
    const double kappa = rng.next_in(0.0141, 0.2368);
    const double actual = testsup::braking_stop_time(v, u_max, kappa);
    const double estimate = rlgl::estimated_braking_time_axis(v, u_max, 0.0141);
    worst = std::max(worst, actual - estimate);
    pass = pass && actual <= estimate + 1e-6;
  }
  report(3, "braking-time over-estimation", pass,
         "1000 draws, worst actual-estimate=" + fmt(worst) + "s");
}

// Criterion 4: the active-set solver against the scanline grid oracle.
void criterion_qp() {
  rlgl::SplitMix64 rng(1002);
  bool pass = true;
  int feasible_nominals = 0;
  double worst_coord = 0.0, worst_kkt = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto prob = testsup::random_qp(rng, 30);
    const auto sol = rlgl::solve(prob);
    const auto grid = testsup::grid_qp_oracle(prob);
    pass = pass && sol.hard_feasible == grid.hard_feasible;

    const double dx = std::abs(sol.u_star.x - grid.u.x);
    const double dy = std::abs(sol.u_star.y - grid.u.y);
    worst_coord = std::max({worst_coord, dx, dy});
    pass = pass && dx <= 2e-3 && dy <= 2e-3;

    const double kkt = rlgl::verify_kkt(prob, sol).max_residual();
    worst_kkt = std::max(worst_kkt, kkt);
    pass = pass && kkt <= 1e-8;

    bool nominal_ok = std::abs(prob.u_nominal.x) <= prob.u_box &&
                      std::abs(prob.u_nominal.y) <= prob.u_box;
    for (const auto& r : prob.rows) nominal_ok = nominal_ok && dot(r.a, prob.u_nominal) <= r.b;
    if (nominal_ok) {
      ++feasible_nominals;
      pass = pass && sol.u_star.x == prob.u_nominal.x && sol.u_star.y == prob.u_nominal.y;
    }
  }
  std::ostringstream d;
  d << "1000 problems, worst coord diff=" << fmt(worst_coord) << " worst KKT=" << fmt(worst_kkt)
    << " exact passthroughs=" << feasible_nominals;
  report(4, "qp oracle equivalence", pass && feasible_nominals > 0, d.str());
}

// Criterion 5: the exponential discretization is exact and Euler-consistent.
void criterion_dynamics() {
  rlgl::SplitMix64 rng(1003);
  bool pass = true;
  double worst_rel = 0.0, worst_euler = 0.0;
  for (int i = 0; i < 1000; ++i) {
    RobotState s;
    s.p = {rng.next_in(-5.0, 5.0), rng.next_in(-5.0, 5.0)};
    s.v = {rng.next_in(-2.0, 2.0), rng.next_in(-2.0, 2.0)};
    const Vec2 u{rng.next_in(-0.5, 0.5), rng.next_in(-0.5, 0.5)};
    const double kappa = rng.next_in(0.0141, 0.2368);
    const double dt = rng.next_in(1e-3, 0.25);

    const auto decayed = rlgl::step(s, {0.0, 0.0}, kappa, dt);
    const double factor = std::exp(-kappa * dt);
    const double decay_err =
        std::max(std::abs(decayed.v.x - factor * s.v.x), std::abs(decayed.v.y - factor * s.v.y)) /
        std::max(1.0, norm(s.v));
    worst_rel = std::max(worst_rel, decay_err);

    const double cut = dt * rng.next_in(0.1, 0.9);
    const auto two = rlgl::step(rlgl::step(s, u, kappa, cut), u, kappa, dt - cut);
    const auto one = rlgl::step(s, u, kappa, dt);
    const double semi_err = std::max(
        {std::abs(two.p.x - one.p.x) / std::max(1.0, std::abs(one.p.x)),
         std::abs(two.p.y - one.p.y) / std::max(1.0, std::abs(one.p.y)),
         std::abs(two.v.x - one.v.x) / std::max(1.0, std::abs(one.v.x)),
         std::abs(two.v.y - one.v.y) / std::max(1.0, std::abs(one.v.y))});
    worst_rel = std::max(worst_rel, semi_err);

    // Oracle resolution: a first-order method at 1e4 substeps carries error
    // ~|u - kappa v| dt^2 / (2e4), so the Euler comparison caps dt at 0.1.
    const double dte = rng.next_in(1e-3, 0.1);
    const auto fine = rlgl::step(s, u, kappa, dte);
    const auto euler = testsup::euler_step(s, u, kappa, dte, 10000);
    const double euler_err =
        std::max({std::abs(euler.p.x - fine.p.x), std::abs(euler.p.y - fine.p.y),
                  std::abs(euler.v.x - fine.v.x), std::abs(euler.v.y - fine.v.y)});
    worst_euler = std::max(worst_euler, euler_err);

    pass = pass && decay_err <= 1e-12 && semi_err <= 1e-12 && euler_err <= 1e-6;
  }
  report(5, "dynamics exactness", pass,
         "1000 steps, worst relative=" + fmt(worst_rel) + " worst vs Euler=" + fmt(worst_euler));
}

// Criterion 6: every implemented bound is at most its true-friction value.
void criterion_robustness() {
  rlgl::SplitMix64 rng(1004);
  const rlgl::Playground pg;
  bool pass = true;
  double worst = -std::numeric_limits<double>::infinity();
  const auto check = [&](double b_impl, double b_true) {
    worst = std::max(worst, b_impl - b_true);
    pass = pass && b_impl <= b_true + 1e-9 * std::max(1.0, std::abs(b_true));
  };

  for (int i = 0; i < 1000; ++i) {
    RobotParams pi, pj;
    pi.u_max = rng.next_in(0.2, 0.5);
    pj.u_max = rng.next_in(0.2, 0.5);
    const double kappa_i = rng.next_in(pi.kappa_low, pi.kappa_up);
    const double kappa_j = rng.next_in(pj.kappa_low, pj.kappa_up);

    RobotState si, sj;
    si.p = {rng.next_in(0.4, 4.6), rng.next_in(0.4, 34.6)};
    si.v = {rng.next_in(-2.0, 2.0), rng.next_in(-2.0, 2.0)};
    const double d = rng.next_in(0.45, 8.0);
    const double ang = rng.next_in(0.0, 6.283185307179586);
    sj.p = si.p + Vec2{d * std::cos(ang), d * std::sin(ang)};
    sj.v = {rng.next_in(-2.0, 2.0), rng.next_in(-2.0, 2.0)};

    const auto walls = rlgl::playground_rows(si, pi, pg);
    const double qx = si.p.x - 0.5 * pg.l_x;
    check(walls.x.b, 2.0 * kappa_i * qx * si.v.x - 2.0 * si.v.x * si.v.x +
                         pi.gamma1 * pi.gamma1 * walls.h1x + 2.0 * pi.gamma1 * walls.h1x_dot);
    const double qy = si.p.y - 0.5 * pg.l_y;
    check(walls.y.b, 2.0 * kappa_i * qy * si.v.y - 2.0 * si.v.y * si.v.y +
                         pi.gamma1 * pi.gamma1 * walls.h1y + 2.0 * pi.gamma1 * walls.h1y_dot);

    const auto caps = rlgl::velocity_rows(si, pi);
    check(caps.x.b, 2.0 * kappa_i * si.v.x * si.v.x + pi.gamma3 * caps.h3x);
    check(caps.y.b, 2.0 * kappa_i * si.v.y * si.v.y + pi.gamma3 * caps.h3y);

    const auto ri = rlgl::pairwise_row(si, sj, pi, pj, pg.d0);
    const auto rj = rlgl::pairwise_row(sj, si, pj, pi, pg.d0);
    const Vec2 pij = si.p - sj.p;
    const Vec2 vij = si.v - sj.v;
    const double dist = norm(pij);
    const double pv = dot(pij, vij);
    const double h2 = dist - pg.d0;
    const double gamma = pi.gamma2;
    check(ri.row.b + rj.row.b,
          -kappa_i * dot(pij, si.v) + kappa_j * dot(pij, sj.v) + norm_sq(vij) -
              pv * pv / (dist * dist) + gamma * gamma * dist * h2 + 2.0 * gamma * pv);

    const auto ob = rlgl::obstacle_row(si, sj.p, pi, pg.d0);
    const double opv = dot(pij, si.v);
    check(ob.row.b, -kappa_i * opv + norm_sq(si.v) - opv * opv / (dist * dist) +
                        pi.gamma4 * pi.gamma4 * dist * h2 + 2.0 * pi.gamma4 * opv);
  }
  report(6, "robust-bound soundness", pass,
         "1000 draws x 7 bounds, worst impl-true=" + fmt(worst));
}

// Criterion 7: separation margins in the criterion-1 log.
void criterion_separation(const rlgl::SimulationLog& log) {
  const double floor = 0.399;
  double min_live = std::numeric_limits<double>::infinity();
  double min_dead = std::numeric_limits<double>::infinity();
  for (const auto& rec : log.records) {
    for (std::size_t i = 0; i < rec.states.size(); ++i) {
      if (rec.states[i].status == RobotStatus::Finished) continue;
      for (std::size_t j = i + 1; j < rec.states.size(); ++j) {
        if (rec.states[j].status == RobotStatus::Finished) continue;
        const bool live_i = rec.states[i].status == RobotStatus::Live;
        const bool live_j = rec.states[j].status == RobotStatus::Live;
        if (!live_i && !live_j) continue;
        const double d = norm(rec.states[i].p - rec.states[j].p);
        double& slot = (live_i && live_j) ? min_live : min_dead;
        slot = std::min(slot, d);
      }
    }
  }
  const bool pass = min_live >= floor && (!(min_dead < floor));
  std::ostringstream d;
  d << "min live-live=" << fmt(min_live) << " min live-dead=" << fmt(min_dead)
    << " floor=" << floor;
  report(7, "minimum separation", pass, d.str());
}

// Criterion 8: two executions produce byte-identical trajectory tables.
void criterion_determinism(const rlgl::SimulationLog& first) {
  const auto config = rlgl::reference_scenario(42);
  const auto second = rlgl::run(config);
  const auto ra = rlgl::certify(first, 1e-6);
  const auto rb = rlgl::certify(second, 1e-6);

  const fs::path dir_a = fs::temp_directory_path() / "rlgl_acceptance_a";
  const fs::path dir_b = fs::temp_directory_path() / "rlgl_acceptance_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  rlgl::EmitOptions oa, ob;
  oa.out_dir = dir_a;
  ob.out_dir = dir_b;
  const auto ba = rlgl::emit(first, ra, oa);
  const auto bb = rlgl::emit(second, rb, ob);
  const std::string ta = slurp(ba.trajectory_path);
  const std::string tb = slurp(bb.trajectory_path);
  const bool pass = !ta.empty() && ta == tb;
  std::ostringstream d;
  d << ba.trajectory_rows << " rows, " << ta.size() << " bytes"
    << (pass ? ", identical" : ", DIFFER");
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  report(8, "determinism", pass, d.str());
}

}  // namespace

int main() {
  const auto log42 = criterion_certification();
  criterion_compliance();
  criterion_braking();
  criterion_qp();
  criterion_dynamics();
  criterion_robustness();
  criterion_separation(log42);
  criterion_determinism(log42);
  if (g_failures == 0) {
    std::printf("all 8 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", g_failures);
  return 1;
}
