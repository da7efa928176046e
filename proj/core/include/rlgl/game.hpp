#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rlgl/constraints.hpp"
#include "rlgl/controller.hpp"
#include "rlgl/qp.hpp"
#include "rlgl/scenario.hpp"

namespace rlgl {

enum class LightColor { Green, Red };

struct Phase {
  LightColor light = LightColor::Green;
  int k = 1;  // 1-based interval index
};

constexpr bool operator==(Phase a, Phase b) { return a.light == b.light && a.k == b.k; }
constexpr bool operator!=(Phase a, Phase b) { return !(a == b); }

// Green on [t_g_k, t_r_k), red on [t_r_k, t_g_{k+1}).
Phase phase_of(double t, const GameSchedule& schedule);

// Moving during red: the phase is red and the speed exceeds move_eps.
bool detect_violation(const RobotState& state, Phase phase, double move_eps);

enum class EventKind { Eliminated, Finished };

struct RefereeEvent {
  double t = 0.0;
  int robot = -1;
  EventKind kind = EventKind::Eliminated;
  Vec2 position;
};

// Applies elimination (frozen in place, zero velocity) and finish (reached
// g_y, removed from the arena) transitions to live robots at time t.
// Violation is checked before finish: crossing the line while moving on red
// still eliminates.
std::vector<RefereeEvent> referee_step(double t, std::vector<RobotState>& states,
                                       const GameSchedule& schedule,
                                       const Playground& playground, double move_eps);

struct SlackSource {
  RowKind kind = RowKind::Pair;
  int other = -1;
  double amount = 0.0;
};

// One safety-filter infeasibility: constraint rows were relaxed this step.
struct SlackEvent {
  double t = 0.0;
  int robot = -1;
  double total = 0.0;
  std::vector<SlackSource> sources;
};

struct StepRecord {
  double t = 0.0;
  std::vector<RobotState> states;       // after the referee ruling at t
  std::vector<ControlInput> u_nominal;  // zero for non-live robots
  std::vector<ControlInput> u_applied;  // zero for non-live robots
  std::vector<BarrierSnapshot> barriers;  // meaningful only while the robot is live
};

struct SimulationLog {
  ScenarioConfig config;
  std::vector<StepRecord> records;
  std::vector<RefereeEvent> events;
  std::vector<SlackEvent> slack_events;
  std::optional<std::string> abort_reason;  // set when the geometry degenerates mid-run
};

// Full game loop: validate, lay out the start grid, then per step compute
// modes and nominal inputs from the time-t snapshot, filter each robot's
// input through its QP, advance the dynamics with the true friction, and
// referee at t + dt. Records cover t = 0 .. duration inclusive.
// Throws ConfigError when validate_scenario reports violations.
SimulationLog run(const ScenarioConfig& config);

struct BarrierMin {
  double value = std::numeric_limits<double>::infinity();
  double t = 0.0;
  int robot = -1;
  int other = -1;  // partner robot / obstacle id for separation minima
};

struct CertFailure {
  std::string barrier;  // h1x, h1y, h2, h3x, h3y, h4
  double t = 0.0;
  int robot = -1;
  int other = -1;
  double value = 0.0;
};

struct SafetyReport {
  BarrierMin min_h1x, min_h1y, min_h2, min_h3x, min_h3y, min_h4;
  int slack_event_count = 0;
  double slack_total = 0.0;
  double cert_tol = 1e-6;
  std::vector<CertFailure> failures;
  bool certified() const { return failures.empty(); }
};

// Scans every logged barrier value of every robot live at that instant and
// flags values below -cert_tol.
SafetyReport certify(const SimulationLog& log, double cert_tol);

}  // namespace rlgl
