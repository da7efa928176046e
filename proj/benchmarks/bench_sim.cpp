#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "rlgl/constraints.hpp"
#include "rlgl/dynamics.hpp"
#include "rlgl/game.hpp"
#include "rlgl/qp.hpp"
#include "rlgl/scenario_io.hpp"

namespace {

void BM_DynamicsStep(benchmark::State& state) {
  rlgl::RobotState s;
  s.p = {2.5, 10.0};
  s.v = {0.3, 1.4};
  const rlgl::ControlInput u{-0.1, 0.4};
  for (auto _ : state) {
    s = rlgl::step(s, u, 0.1, 0.01);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_DynamicsStep);

void BM_AssembleRows(benchmark::State& state) {
  const auto config = rlgl::reference_scenario(42);
  const auto states = rlgl::initial_grid(config);
  for (auto _ : state) {
    const auto assembly =
        rlgl::assemble(0, states, config.robots, config.playground, {}, 0.0);
    benchmark::DoNotOptimize(assembly.rows.data());
  }
}
BENCHMARK(BM_AssembleRows);

void BM_QpSolve(benchmark::State& state) {
  const auto config = rlgl::reference_scenario(42);
  const auto states = rlgl::initial_grid(config);
  const auto assembly =
      rlgl::assemble(0, states, config.robots, config.playground, {}, 0.0);
  rlgl::QpProblem prob;
  prob.rows.assign(assembly.rows.begin(),
                   assembly.rows.begin() + static_cast<std::ptrdiff_t>(state.range(0)));
  prob.u_nominal = {0.0, config.robots[0].u_max};
  prob.u_box = config.robots[0].u_max;
  for (auto _ : state) {
    const auto sol = rlgl::solve(prob);
    benchmark::DoNotOptimize(sol.u_star);
  }
}
BENCHMARK(BM_QpSolve)->Arg(4)->Arg(10)->Arg(25);

void BM_GameSecond(benchmark::State& state) {
  auto config = rlgl::reference_scenario(42);
  config.schedule.duration = 1.0;
  const auto robots = static_cast<std::int64_t>(config.robots.size());
  std::int64_t steps = 0;
  for (auto _ : state) {
    const auto log = rlgl::run(config);
    steps += static_cast<std::int64_t>(log.records.size());
    benchmark::DoNotOptimize(log.records.data());
  }
  state.SetItemsProcessed(steps * robots);  // robot-steps per second
}
BENCHMARK(BM_GameSecond)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
