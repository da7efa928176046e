#include "rlgl/emit.hpp"

#include <cstdio>
#include <sstream>

#include "rlgl/scenario_io.hpp"
#include "text_util.hpp"

namespace rlgl {

namespace {

using detail::format_double;

const char* status_name(RobotStatus s) {
  switch (s) {
    case RobotStatus::Live: return "live";
    case RobotStatus::Eliminated: return "eliminated";
    case RobotStatus::Finished: return "finished";
  }
  return "?";
}

const char* event_name(EventKind k) {
  return k == EventKind::Eliminated ? "eliminated" : "finished";
}

void describe_min(std::ostringstream& os, const char* label, const BarrierMin& m,
                  bool with_other) {
  os << label << ": ";
  if (m.robot < 0) {
    os << "n/a\n";
    return;
  }
  os << format_double(m.value) << " at t=" << format_double(m.t) << " robot=" << m.robot;
  if (with_other) os << " other=" << m.other;
  os << "\n";
}

}  // namespace

std::string render_report(const SafetyReport& report, const SimulationLog& log) {
  std::ostringstream os;
  os << "certified: " << (report.certified() ? "yes" : "no") << "\n";
  os << "cert_tol: " << format_double(report.cert_tol) << "\n";
  os << "failures: " << report.failures.size() << "\n";
  os << "slack_events: " << report.slack_event_count << "\n";
  os << "slack_total: " << format_double(report.slack_total) << "\n";
  describe_min(os, "min_h1x", report.min_h1x, false);
  describe_min(os, "min_h1y", report.min_h1y, false);
  describe_min(os, "min_h2", report.min_h2, true);
  describe_min(os, "min_h3x", report.min_h3x, false);
  describe_min(os, "min_h3y", report.min_h3y, false);
  describe_min(os, "min_h4", report.min_h4, true);
  os << "robots: " << log.config.robots.size() << "\n";
  std::ostringstream elim, fin;
  int n_elim = 0, n_fin = 0;
  for (const RefereeEvent& e : log.events) {
    if (e.kind == EventKind::Eliminated) {
      elim << " " << e.robot;
      ++n_elim;
    } else {
      fin << " " << e.robot;
      ++n_fin;
    }
  }
  os << "eliminated: " << n_elim << elim.str() << "\n";
  os << "finished: " << n_fin << fin.str() << "\n";
  if (log.abort_reason) os << "aborted: " << *log.abort_reason << "\n";
  for (const CertFailure& f : report.failures) {
    os << "failure: " << f.barrier << " at t=" << format_double(f.t) << " robot=" << f.robot;
    if (f.other >= 0) os << " other=" << f.other;
    os << " value=" << format_double(f.value) << "\n";
  }
  return os.str();
}

std::string render_frame_svg(const SimulationLog& log, std::size_t record_index) {
  const StepRecord& rec = log.records[record_index];
  const Playground& pg = log.config.playground;
  const double s = 20.0;  // px per meter
  const double pad = 24.0;
  const double w = pg.l_x * s + 2.0 * pad;
  const double h = pg.l_y * s + 2.0 * pad;
  auto X = [&](double x) { return pad + x * s; };
  auto Y = [&](double y) { return pad + (pg.l_y - y) * s; };  // y up

  const Phase phase = phase_of(rec.t, log.config.schedule);
  const char* wall = phase.light == LightColor::Green ? "#2e7d32" : "#c62828";

  char buf[160];
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  std::snprintf(buf, sizeof buf,
                "  <rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"#fcfcfc\" "
                "stroke=\"%s\" stroke-width=\"4\"/>\n",
                X(0.0), Y(pg.l_y), pg.l_x * s, pg.l_y * s, wall);
  os << buf;
  std::snprintf(buf, sizeof buf,
                "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#666\" "
                "stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n",
                X(0.0), Y(pg.g_y), X(pg.l_x), Y(pg.g_y));
  os << buf;
  for (std::size_t i = 0; i < rec.states.size(); ++i) {
    const RobotState& st = rec.states[i];
    const double r = pg.r0 * s;
    switch (st.status) {
      case RobotStatus::Live:
        std::snprintf(buf, sizeof buf,
                      "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"#1976d2\"/>\n",
                      X(st.p.x), Y(st.p.y), r);
        os << buf;
        break;
      case RobotStatus::Eliminated:
        std::snprintf(buf, sizeof buf,
                      "  <rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                      "fill=\"#9e9e9e\"/>\n",
                      X(st.p.x) - r, Y(st.p.y) - r, 2.0 * r, 2.0 * r);
        os << buf;
        break;
      case RobotStatus::Finished:
        std::snprintf(buf, sizeof buf,
                      "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"none\" "
                      "stroke=\"#1976d2\" stroke-width=\"1.5\"/>\n",
                      X(st.p.x), Y(st.p.y), r);
        os << buf;
        break;
    }
  }
  std::snprintf(buf, sizeof buf,
                "  <text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" font-size=\"14\">t = "
                "%.2f s</text>\n",
                pad, pad - 8.0, rec.t);
  os << buf;
  os << "</svg>\n";
  return os.str();
}

OutputBundle emit(const SimulationLog& log, const SafetyReport& report,
                  const EmitOptions& options) {
  namespace fs = std::filesystem;
  OutputBundle out;
  fs::create_directories(options.out_dir);

  {
    std::ostringstream os;
    os << "t\trobot\tp_x\tp_y\tv_x\tv_y\tu_x\tu_y\tstatus\n";
    for (const StepRecord& rec : log.records) {
      for (std::size_t i = 0; i < rec.states.size(); ++i) {
        const RobotState& st = rec.states[i];
        const bool terminal_row =
            st.status != RobotStatus::Live && st.status_since == rec.t;
        if (st.status != RobotStatus::Live && !terminal_row) continue;
        os << format_double(rec.t) << "\t" << i << "\t" << format_double(st.p.x) << "\t"
           << format_double(st.p.y) << "\t" << format_double(st.v.x) << "\t"
           << format_double(st.v.y) << "\t" << format_double(rec.u_applied[i].x) << "\t"
           << format_double(rec.u_applied[i].y) << "\t" << status_name(st.status) << "\n";
        ++out.trajectory_rows;
      }
    }
    out.trajectory_path = options.out_dir / "trajectory.tsv";
    detail::write_file_atomic(out.trajectory_path, os.str());
  }

  {
    std::ostringstream os;
    os << "t\trobot\tbarrier\tvalue\n";
    auto row = [&](double t, std::size_t i, const std::string& name, double value) {
      os << format_double(t) << "\t" << i << "\t" << name << "\t" << format_double(value)
         << "\n";
      ++out.barrier_rows;
    };
    for (const StepRecord& rec : log.records) {
      for (std::size_t i = 0; i < rec.states.size(); ++i) {
        if (rec.states[i].status != RobotStatus::Live) continue;
        const BarrierSnapshot& b = rec.barriers[i];
        row(rec.t, i, "h1x", b.h1x);
        row(rec.t, i, "h1y", b.h1y);
        for (const auto& [other, value] : b.h2) row(rec.t, i, "h2:" + std::to_string(other), value);
        row(rec.t, i, "h3x", b.h3x);
        row(rec.t, i, "h3y", b.h3y);
        for (const auto& [other, value] : b.h4) row(rec.t, i, "h4:" + std::to_string(other), value);
      }
    }
    out.barrier_path = options.out_dir / "barriers.tsv";
    detail::write_file_atomic(out.barrier_path, os.str());
  }

  {
    std::ostringstream os;
    os << "t\trobot\tevent\n";
    for (const RefereeEvent& e : log.events) {
      os << format_double(e.t) << "\t" << e.robot << "\t" << event_name(e.kind) << "\n";
      ++out.event_rows;
    }
    out.events_path = options.out_dir / "events.tsv";
    detail::write_file_atomic(out.events_path, os.str());
  }

  out.report_path = options.out_dir / "report.txt";
  detail::write_file_atomic(out.report_path, render_report(report, log));

  out.scenario_path = options.out_dir / "scenario.cfg";
  detail::write_file_atomic(out.scenario_path, write_scenario(log.config));

  if (options.frame_stride > 0 && !log.records.empty()) {
    const fs::path frame_dir = options.out_dir / "frames";
    fs::create_directories(frame_dir);
    for (std::size_t k = 0; k < log.records.size();
         k += static_cast<std::size_t>(options.frame_stride)) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%06zu.svg", k);
      const fs::path p = frame_dir / name;
      detail::write_file_atomic(p, render_frame_svg(log, k));
      out.frame_paths.push_back(p);
    }
  }
  return out;
}

}  // namespace rlgl
