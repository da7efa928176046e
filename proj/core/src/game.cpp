#include "rlgl/game.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace rlgl {

Phase phase_of(double t, const GameSchedule& schedule) {
  const int k = schedule.interval_of(t);
  if (t < schedule.red_time(k)) return {LightColor::Green, k};
  return {LightColor::Red, k};
}

bool detect_violation(const RobotState& state, Phase phase, double move_eps) {
  return phase.light == LightColor::Red && norm(state.v) > move_eps;
}

std::vector<RefereeEvent> referee_step(double t, std::vector<RobotState>& states,
                                       const GameSchedule& schedule,
                                       const Playground& playground, double move_eps) {
  std::vector<RefereeEvent> out;
  const Phase phase = phase_of(t, schedule);
  for (std::size_t i = 0; i < states.size(); ++i) {
    RobotState& s = states[i];
    if (s.status != RobotStatus::Live) continue;
    if (detect_violation(s, phase, move_eps)) {
      s.status = RobotStatus::Eliminated;
      s.status_since = t;
      s.v = {0.0, 0.0};
      out.push_back({t, static_cast<int>(i), EventKind::Eliminated, s.p});
    } else if (s.p.y >= playground.g_y) {
      s.status = RobotStatus::Finished;
      s.status_since = t;
      out.push_back({t, static_cast<int>(i), EventKind::Finished, s.p});
    }
  }
  return out;
}

SimulationLog run(const ScenarioConfig& config) {
  if (config.robots.empty()) {
    // Nothing to simulate; an empty log certifies trivially.
    SimulationLog log;
    log.config = config;
    return log;
  }
  {
    const std::vector<std::string> violations = validate_scenario(config);
    if (!violations.empty()) {
      std::ostringstream os;
      os << "invalid scenario:";
      for (const std::string& v : violations) os << "\n  " << v;
      throw ConfigError(os.str());
    }
  }

  SimulationLog log;
  log.config = config;
  const std::size_t n = config.robots.size();
  std::vector<RobotState> states = initial_grid(config);
  std::vector<ControllerMode> modes(n);
  std::vector<Obstacle> obstacles;
  const double dt = config.dt;
  const long steps = std::lround(config.schedule.duration / dt);
  log.records.reserve(static_cast<std::size_t>(steps) + 1);

  for (long step_idx = 0; step_idx <= steps; ++step_idx) {
    const double t = static_cast<double>(step_idx) * dt;
    if (step_idx > 0) {
      std::vector<RefereeEvent> events =
          referee_step(t, states, config.schedule, config.playground, config.move_eps);
      for (RefereeEvent& e : events) {
        if (e.kind == EventKind::Eliminated) obstacles.push_back({e.robot, e.position});
        log.events.push_back(e);
      }
    }

    StepRecord rec;
    rec.t = t;
    rec.states = states;
    rec.u_nominal.assign(n, {});
    rec.u_applied.assign(n, {});
    rec.barriers.assign(n, {});

    for (std::size_t i = 0; i < n; ++i) {
      if (states[i].status != RobotStatus::Live) continue;
      const RobotParams& rp = config.robots[i];
      modes[i] = update_mode(t, states[i], rp, config.schedule, modes[i]);
      const ControlInput u_nom = nominal_input(t, states[i], rp, modes[i]);

      Assembly assembly;
      try {
        assembly = assemble(static_cast<int>(i), states, config.robots, config.playground,
                            obstacles, t);
      } catch (const GeometryError& e) {
        log.abort_reason = e.what();
        log.records.push_back(std::move(rec));
        return log;
      }

      QpProblem qp{u_nom, std::move(assembly.rows), rp.u_max, config.slack_weight};
      const QpSolution sol = solve(qp);
      if (!sol.hard_feasible) {
        SlackEvent ev{t, static_cast<int>(i), 0.0, {}};
        for (std::size_t r = 0; r < sol.slack.size(); ++r) {
          if (sol.slack[r] > 0.0) {
            ev.total += sol.slack[r];
            ev.sources.push_back({qp.rows[r].kind, qp.rows[r].other, sol.slack[r]});
          }
        }
        log.slack_events.push_back(std::move(ev));
      }

      rec.u_nominal[i] = u_nom;
      rec.u_applied[i] = clamp_input(sol.u_star, rp.u_max);
      rec.barriers[i] = std::move(assembly.snapshot);
    }

    const std::vector<ControlInput>& applied = rec.u_applied;
    if (step_idx < steps) {
      for (std::size_t i = 0; i < n; ++i) {
        if (states[i].status != RobotStatus::Live) continue;
        states[i] = step(states[i], applied[i], config.robots[i].kappa_true, dt);
      }
    }
    log.records.push_back(std::move(rec));
  }
  return log;
}

namespace {

void track(BarrierMin& slot, const char* name, double value, double t, int robot, int other,
           double cert_tol, std::vector<CertFailure>& failures) {
  if (value < slot.value) slot = {value, t, robot, other};
  if (value < -cert_tol) failures.push_back({name, t, robot, other, value});
}

}  // namespace

SafetyReport certify(const SimulationLog& log, double cert_tol) {
  SafetyReport rep;
  rep.cert_tol = cert_tol;
  for (const StepRecord& rec : log.records) {
    for (std::size_t i = 0; i < rec.states.size(); ++i) {
      if (rec.states[i].status != RobotStatus::Live) continue;
      const BarrierSnapshot& b = rec.barriers[i];
      const int id = static_cast<int>(i);
      track(rep.min_h1x, "h1x", b.h1x, rec.t, id, -1, cert_tol, rep.failures);
      track(rep.min_h1y, "h1y", b.h1y, rec.t, id, -1, cert_tol, rep.failures);
      track(rep.min_h3x, "h3x", b.h3x, rec.t, id, -1, cert_tol, rep.failures);
      track(rep.min_h3y, "h3y", b.h3y, rec.t, id, -1, cert_tol, rep.failures);
      for (const auto& [other, value] : b.h2)
        track(rep.min_h2, "h2", value, rec.t, id, other, cert_tol, rep.failures);
      for (const auto& [other, value] : b.h4)
        track(rep.min_h4, "h4", value, rec.t, id, other, cert_tol, rep.failures);
    }
  }
  for (const SlackEvent& ev : log.slack_events) {
    rep.slack_event_count += 1;
    rep.slack_total += ev.total;
  }
  return rep;
}

}  // namespace rlgl
