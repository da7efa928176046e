#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "rlgl/game.hpp"

namespace rlgl {

struct EmitOptions {
  std::filesystem::path out_dir;
  int frame_stride = 0;  // one SVG frame every N steps; 0 disables frames
};

struct OutputBundle {
  std::filesystem::path trajectory_path;
  std::filesystem::path barrier_path;
  std::filesystem::path events_path;
  std::filesystem::path report_path;
  std::filesystem::path scenario_path;
  std::vector<std::filesystem::path> frame_paths;
  std::size_t trajectory_rows = 0;  // data rows, header excluded
  std::size_t barrier_rows = 0;
  std::size_t event_rows = 0;
};

// Writes trajectory.tsv, barriers.tsv, events.tsv, report.txt, scenario.cfg
// and (optionally) frames/frame_NNNNNN.svg under options.out_dir. All files
// are written atomically (temp then rename). Trajectory rows cover every
// live robot at every sample plus one terminal row at the sample where a
// robot leaves the game.
OutputBundle emit(const SimulationLog& log, const SafetyReport& report,
                  const EmitOptions& options);

std::string render_report(const SafetyReport& report, const SimulationLog& log);

// One playground frame: walls colored by phase, finish line, live disks,
// eliminated squares, finished outlines.
std::string render_frame_svg(const SimulationLog& log, std::size_t record_index);

}  // namespace rlgl
