#include "rlgl/scenario.hpp"

#include <algorithm>
#include <sstream>

namespace rlgl {

namespace {

template <typename... Parts>
std::string cat(Parts&&... parts) {
  std::ostringstream os;
  ((os << parts), ...);
  return os.str();
}

}  // namespace

std::vector<std::string> validate_scenario(const ScenarioConfig& c) {
  std::vector<std::string> out;
  auto bad = [&out](auto&&... parts) { out.push_back(cat(parts...)); };

  if (c.robots.empty()) bad("scenario has no robots");
  for (std::size_t i = 0; i < c.robots.size(); ++i) {
    const RobotParams& r = c.robots[i];
    auto rbad = [&](auto&&... parts) { bad("robot ", i, ": ", parts...); };
    if (!(r.v_max > 0.0)) rbad("v_max = ", r.v_max, " violates v_max > 0");
    if (!(r.u_max > 0.0)) rbad("u_max = ", r.u_max, " violates u_max > 0");
    if (!(r.kappa_low > 0.0)) rbad("kappa_low = ", r.kappa_low, " violates kappa_low > 0");
    if (!(r.kappa_low <= r.kappa_true && r.kappa_true <= r.kappa_up))
      rbad("kappa bounds (", r.kappa_low, ", ", r.kappa_true, ", ", r.kappa_up,
           ") violate kappa_low <= kappa_true <= kappa_up");
    if (!(r.eta >= 1.0)) rbad("eta = ", r.eta, " violates eta >= 1");
    if (!(r.gain > 0.0)) rbad("gain = ", r.gain, " violates gain > 0");
    if (!(r.gamma1 > 0.0)) rbad("gamma1 = ", r.gamma1, " violates gamma1 > 0");
    if (!(r.gamma2 > 0.0)) rbad("gamma2 = ", r.gamma2, " violates gamma2 > 0");
    if (!(r.gamma3 > 0.0)) rbad("gamma3 = ", r.gamma3, " violates gamma3 > 0");
    if (!(r.gamma4 > 0.0)) rbad("gamma4 = ", r.gamma4, " violates gamma4 > 0");
    if (!(r.smoothing_eps > 0.0))
      rbad("smoothing_eps = ", r.smoothing_eps, " violates smoothing_eps > 0");
  }

  const Playground& pg = c.playground;
  if (!(pg.l_x > 0.0)) bad("playground: l_x = ", pg.l_x, " violates l_x > 0");
  if (!(pg.l_y > 0.0)) bad("playground: l_y = ", pg.l_y, " violates l_y > 0");
  if (!(pg.r0 > 0.0)) bad("playground: r0 = ", pg.r0, " violates r0 > 0");
  if (!(pg.d0 > pg.r0)) bad("playground: d0 = ", pg.d0, " violates d0 > r0 = ", pg.r0);
  if (!(pg.g_y > 0.0 && pg.g_y < pg.l_y))
    bad("playground: g_y = ", pg.g_y, " violates 0 < g_y < l_y");
  const double half_min = 0.5 * std::min(pg.l_x, pg.l_y);
  if (!(1.1 * pg.r0 < half_min))
    bad("playground: wall margin 1.1*r0 = ", 1.1 * pg.r0, " violates 1.1*r0 < min(l_x, l_y)/2 = ",
        half_min);

  const GameSchedule& s = c.schedule;
  if (s.green_times.empty()) {
    bad("schedule has no intervals");
  } else {
    if (s.green_times.front() != 0.0)
      bad("schedule: first green at ", s.green_times.front(), " violates t_g_1 = 0");
    if (s.red_times.size() != s.green_times.size()) {
      bad("schedule: ", s.red_times.size(), " red times for ", s.green_times.size(),
          " green times");
    } else {
      for (int k = 0; k < s.intervals(); ++k) {
        const double g = s.green_times[static_cast<std::size_t>(k)];
        const double r = s.red_times[static_cast<std::size_t>(k)];
        if (!(g < r)) bad("schedule: interval ", k + 1, " violates t_g < t_r (", g, " vs ", r, ")");
        if (k + 1 < s.intervals()) {
          const double gn = s.green_times[static_cast<std::size_t>(k) + 1];
          if (!(r < gn))
            bad("schedule: interval ", k + 1, " violates t_r < next t_g (", r, " vs ", gn, ")");
        }
      }
    }
  }
  if (!(s.duration > 0.0)) bad("schedule: duration = ", s.duration, " violates duration > 0");

  if (!(c.dt > 0.0)) bad("dt = ", c.dt, " violates dt > 0");
  if (!(c.move_eps > 0.0)) bad("move_eps = ", c.move_eps, " violates move_eps > 0");
  if (!(c.slack_weight > 1.0))
    bad("slack_weight = ", c.slack_weight, " violates slack_weight >> 1");
  if (c.start_rows < 1) bad("start_rows = ", c.start_rows, " violates start_rows >= 1");
  if (c.start_cols < 1) bad("start_cols = ", c.start_cols, " violates start_cols >= 1");
  if (c.start_rows >= 1 && c.start_cols >= 1) {
    const std::size_t capacity =
        static_cast<std::size_t>(c.start_rows) * static_cast<std::size_t>(c.start_cols);
    if (capacity < c.robots.size())
      bad("start grid capacity ", capacity, " (", c.start_rows, " x ", c.start_cols,
          ") is below the robot count ", c.robots.size());
  }
  return out;
}

std::vector<RobotState> initial_grid(const ScenarioConfig& c) {
  const Playground& pg = c.playground;
  const std::size_t n = c.robots.size();
  const int rows = c.start_rows;
  const int cols = c.start_cols;
  if (rows < 1 || cols < 1)
    throw ConfigError(cat("start grid ", rows, " x ", cols, " is not positive"));
  const std::size_t capacity = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (capacity < n)
    throw ConfigError(cat("start grid capacity ", capacity, " (", rows, " x ", cols,
                          ") is below the robot count ", n));

  const double margin = 1.1 * pg.r0;
  const double x_lo = margin, x_hi = pg.l_x - margin;
  const double y_lo = margin, y_hi = 0.1 * pg.l_y;
  if (x_hi < x_lo)
    throw ConfigError(cat("playground width ", pg.l_x, " leaves no room inside the wall margin ",
                          margin));
  if (y_hi < y_lo)
    throw ConfigError(cat("start band is empty: 0.1*l_y = ", y_hi, " < 1.1*r0 = ", y_lo));

  const double sx = cols > 1 ? (x_hi - x_lo) / (cols - 1) : 0.0;
  const double sy = rows > 1 ? (y_hi - y_lo) / (rows - 1) : 0.0;
  if (n >= 2 && cols > 1 && sx < pg.d0)
    throw ConfigError(cat("start grid too dense: column spacing ", sx,
                          " is below the required separation d0 = ", pg.d0));
  if (n > static_cast<std::size_t>(cols) && sy < pg.d0)
    throw ConfigError(cat("start grid too dense: row spacing ", sy,
                          " is below the required separation d0 = ", pg.d0));

  std::vector<RobotState> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int col = static_cast<int>(i) % cols;
    const int row = static_cast<int>(i) / cols;
    out[i].p.x = cols > 1 ? x_lo + sx * col : 0.5 * (x_lo + x_hi);
    out[i].p.y = rows > 1 ? y_lo + sy * row : 0.5 * (y_lo + y_hi);
  }
  return out;
}

}  // namespace rlgl
