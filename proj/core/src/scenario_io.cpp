#include "rlgl/scenario_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "rlgl/rng.hpp"
#include "text_util.hpp"

namespace rlgl {

namespace {

std::vector<RobotParams> draw_robots(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<RobotParams> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    RobotParams& r = out[i];
    r.id = static_cast<int>(i);
    r.v_max = rng.next_in(1.5, 2.0);
    r.u_max = rng.next_in(0.2, 0.5);
    r.eta = rng.next_in(1.0, 1.5);
    r.kappa_true = rng.next_in(r.kappa_low, r.kappa_up);
  }
  return out;
}

GameSchedule reference_schedule() {
  GameSchedule s;
  s.green_times = {0.0, 8.0, 16.0, 24.0, 32.0, 40.0, 48.0, 56.0, 64.0};
  s.red_times = {7.0, 15.0, 23.0, 31.0, 39.0, 47.0, 55.0, 63.0, kNeverRed};
  s.duration = 80.0;
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  throw ParseError(os.str());
}

double to_double(std::string_view v, const std::string& origin, int line, std::string_view key) {
  double out = 0.0;
  const char* last = v.data() + v.size();
  const std::from_chars_result res = std::from_chars(v.data(), last, out);
  if (res.ec != std::errc() || res.ptr != last)
    fail(origin, line, "malformed number for key '" + std::string(key) + "': '" +
                           std::string(v) + "'");
  return out;
}

template <typename Int>
Int to_int(std::string_view v, const std::string& origin, int line, std::string_view key) {
  Int out = 0;
  const char* last = v.data() + v.size();
  const std::from_chars_result res = std::from_chars(v.data(), last, out);
  if (res.ec != std::errc() || res.ptr != last)
    fail(origin, line, "malformed integer for key '" + std::string(key) + "': '" +
                           std::string(v) + "'");
  return out;
}

bool to_bool(std::string_view v, const std::string& origin, int line, std::string_view key) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  fail(origin, line,
       "malformed flag for key '" + std::string(key) + "': '" + std::string(v) + "'");
}

std::vector<double> to_doubles(std::string_view v, const std::string& origin, int line,
                               std::string_view key) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < v.size()) {
    while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
    std::size_t end = pos;
    while (end < v.size() && !std::isspace(static_cast<unsigned char>(v[end]))) ++end;
    if (end > pos) out.push_back(to_double(v.substr(pos, end - pos), origin, line, key));
    pos = end;
  }
  return out;
}

enum class Section { Global, Playground, Schedule, Robot };

struct Entry {
  int line = 0;
  Section section = Section::Global;
  int robot = -1;
  std::string key, value;
};

std::vector<Entry> scan(std::string_view text, const std::string& origin) {
  std::vector<Entry> out;
  Section section = Section::Global;
  int robot = -1;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, line_no, "unterminated section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (name == "playground") {
        section = Section::Playground;
      } else if (name == "schedule") {
        section = Section::Schedule;
      } else if (name.substr(0, 5) == "robot") {
        section = Section::Robot;
        robot = static_cast<int>(
            to_int<long>(trim(name.substr(5)), origin, line_no, "robot section index"));
        if (robot < 0) fail(origin, line_no, "negative robot section index");
      } else {
        fail(origin, line_no, "unknown section '" + std::string(name) + "'");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(origin, line_no, "expected key = value");
    Entry e;
    e.line = line_no;
    e.section = section;
    e.robot = robot;
    e.key = std::string(trim(line.substr(0, eq)));
    e.value = std::string(trim(line.substr(eq + 1)));
    if (e.key.empty()) fail(origin, line_no, "empty key");
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

ScenarioConfig reference_scenario(std::uint64_t seed) {
  ScenarioConfig c;
  c.rng_seed = seed;
  c.schedule = reference_schedule();
  c.robots = draw_robots(22, seed);
  return c;
}

ScenarioConfig parse_scenario_text(std::string_view text, const std::string& origin) {
  const std::vector<Entry> entries = scan(text, origin);

  std::size_t robot_count = 0;
  bool have_count = false;
  std::uint64_t seed = 0;
  int max_robot_section = -1;
  for (const Entry& e : entries) {
    if (e.section == Section::Global && e.key == "robots") {
      robot_count = to_int<std::size_t>(e.value, origin, e.line, e.key);
      have_count = true;
    } else if (e.section == Section::Global && e.key == "seed") {
      seed = to_int<std::uint64_t>(e.value, origin, e.line, e.key);
    } else if (e.section == Section::Robot) {
      max_robot_section = std::max(max_robot_section, e.robot);
    }
  }
  if (!have_count) {
    if (max_robot_section < 0) fail(origin, 0, "missing key 'robots'");
    robot_count = static_cast<std::size_t>(max_robot_section) + 1;
  }

  ScenarioConfig c;
  c.rng_seed = seed;
  c.schedule = reference_schedule();
  c.robots = draw_robots(robot_count, seed);

  for (const Entry& e : entries) {
    const std::string& k = e.key;
    const std::string& v = e.value;
    switch (e.section) {
      case Section::Global:
        if (k == "robots" || k == "seed") {
        } else if (k == "dt") {
          c.dt = to_double(v, origin, e.line, k);
        } else if (k == "duration") {
          c.schedule.duration = to_double(v, origin, e.line, k);
        } else if (k == "move_eps") {
          c.move_eps = to_double(v, origin, e.line, k);
        } else if (k == "slack_weight") {
          c.slack_weight = to_double(v, origin, e.line, k);
        } else if (k == "cert_tol") {
          c.cert_tol = to_double(v, origin, e.line, k);
        } else if (k == "start_rows") {
          c.start_rows = to_int<int>(v, origin, e.line, k);
        } else if (k == "start_cols") {
          c.start_cols = to_int<int>(v, origin, e.line, k);
        } else {
          fail(origin, e.line, "unknown key '" + k + "'");
        }
        break;
      case Section::Playground:
        if (k == "l_x") {
          c.playground.l_x = to_double(v, origin, e.line, k);
        } else if (k == "l_y") {
          c.playground.l_y = to_double(v, origin, e.line, k);
        } else if (k == "g_y") {
          c.playground.g_y = to_double(v, origin, e.line, k);
        } else if (k == "r0") {
          c.playground.r0 = to_double(v, origin, e.line, k);
        } else if (k == "d0") {
          c.playground.d0 = to_double(v, origin, e.line, k);
        } else {
          fail(origin, e.line, "unknown playground key '" + k + "'");
        }
        break;
      case Section::Schedule:
        if (k == "green_times") {
          c.schedule.green_times = to_doubles(v, origin, e.line, k);
        } else if (k == "red_times") {
          c.schedule.red_times = to_doubles(v, origin, e.line, k);
        } else if (k == "duration") {
          c.schedule.duration = to_double(v, origin, e.line, k);
        } else {
          fail(origin, e.line, "unknown schedule key '" + k + "'");
        }
        break;
      case Section::Robot: {
        if (e.robot >= static_cast<int>(robot_count))
          fail(origin, e.line,
               "robot section index " + std::to_string(e.robot) + " out of range (robots = " +
                   std::to_string(robot_count) + ")");
        RobotParams& r = c.robots[static_cast<std::size_t>(e.robot)];
        if (k == "id") {
          r.id = to_int<int>(v, origin, e.line, k);
        } else if (k == "v_max") {
          r.v_max = to_double(v, origin, e.line, k);
        } else if (k == "u_max") {
          r.u_max = to_double(v, origin, e.line, k);
        } else if (k == "kappa") {
          r.kappa_true = to_double(v, origin, e.line, k);
        } else if (k == "kappa_low") {
          r.kappa_low = to_double(v, origin, e.line, k);
        } else if (k == "kappa_up") {
          r.kappa_up = to_double(v, origin, e.line, k);
        } else if (k == "eta") {
          r.eta = to_double(v, origin, e.line, k);
        } else if (k == "gain") {
          r.gain = to_double(v, origin, e.line, k);
        } else if (k == "gamma1") {
          r.gamma1 = to_double(v, origin, e.line, k);
        } else if (k == "gamma2") {
          r.gamma2 = to_double(v, origin, e.line, k);
        } else if (k == "gamma3") {
          r.gamma3 = to_double(v, origin, e.line, k);
        } else if (k == "gamma4") {
          r.gamma4 = to_double(v, origin, e.line, k);
        } else if (k == "smoothing_eps") {
          r.smoothing_eps = to_double(v, origin, e.line, k);
        } else if (k == "hard_sign") {
          r.hard_sign_brake = to_bool(v, origin, e.line, k);
        } else {
          fail(origin, e.line, "unknown robot key '" + k + "'");
        }
        break;
      }
    }
  }

  const std::vector<std::string> violations = validate_scenario(c);
  if (!violations.empty()) {
    std::ostringstream os;
    os << origin << ": invalid scenario:";
    for (const std::string& msg : violations) os << "\n  " << msg;
    throw ConfigError(os.str());
  }
  return c;
}

ScenarioConfig parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path.string());
}

std::string write_scenario(const ScenarioConfig& c) {
  using detail::format_double;
  std::ostringstream os;
  os << "robots = " << c.robots.size() << "\n";
  os << "seed = " << c.rng_seed << "\n";
  os << "dt = " << format_double(c.dt) << "\n";
  os << "duration = " << format_double(c.schedule.duration) << "\n";
  os << "move_eps = " << format_double(c.move_eps) << "\n";
  os << "slack_weight = " << format_double(c.slack_weight) << "\n";
  os << "cert_tol = " << format_double(c.cert_tol) << "\n";
  os << "start_rows = " << c.start_rows << "\n";
  os << "start_cols = " << c.start_cols << "\n";
  os << "\n[playground]\n";
  os << "l_x = " << format_double(c.playground.l_x) << "\n";
  os << "l_y = " << format_double(c.playground.l_y) << "\n";
  os << "g_y = " << format_double(c.playground.g_y) << "\n";
  os << "r0 = " << format_double(c.playground.r0) << "\n";
  os << "d0 = " << format_double(c.playground.d0) << "\n";
  os << "\n[schedule]\n";
  os << "green_times =";
  for (double t : c.schedule.green_times) os << " " << format_double(t);
  os << "\nred_times =";
  for (double t : c.schedule.red_times) os << " " << format_double(t);
  os << "\n";
  for (std::size_t i = 0; i < c.robots.size(); ++i) {
    const RobotParams& r = c.robots[i];
    os << "\n[robot " << i << "]\n";
    os << "id = " << r.id << "\n";
    os << "v_max = " << format_double(r.v_max) << "\n";
    os << "u_max = " << format_double(r.u_max) << "\n";
    os << "kappa = " << format_double(r.kappa_true) << "\n";
    os << "kappa_low = " << format_double(r.kappa_low) << "\n";
    os << "kappa_up = " << format_double(r.kappa_up) << "\n";
    os << "eta = " << format_double(r.eta) << "\n";
    os << "gain = " << format_double(r.gain) << "\n";
    os << "gamma1 = " << format_double(r.gamma1) << "\n";
    os << "gamma2 = " << format_double(r.gamma2) << "\n";
    os << "gamma3 = " << format_double(r.gamma3) << "\n";
    os << "gamma4 = " << format_double(r.gamma4) << "\n";
    os << "smoothing_eps = " << format_double(r.smoothing_eps) << "\n";
    os << "hard_sign = " << (r.hard_sign_brake ? 1 : 0) << "\n";
  }
  return os.str();
}

void write_scenario_file(const ScenarioConfig& config, const std::filesystem::path& path) {
  detail::write_file_atomic(path, write_scenario(config));
}

}  // namespace rlgl
