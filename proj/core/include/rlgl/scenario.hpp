#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rlgl/types.hpp"

namespace rlgl {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One message per violated invariant; an empty list means the scenario is simulable.
std::vector<std::string> validate_scenario(const ScenarioConfig& config);

// Deterministic start layout: robot i occupies column i % start_cols of row
// i / start_cols. Columns are evenly spaced across [1.1 r0, l_x - 1.1 r0],
// rows bottom-up inside the start band [1.1 r0, 0.1 l_y]. Everyone starts at
// rest. Throws ConfigError when the grid cannot honor the separation d0.
std::vector<RobotState> initial_grid(const ScenarioConfig& config);

}  // namespace rlgl
