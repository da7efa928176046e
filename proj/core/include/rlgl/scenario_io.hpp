#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rlgl/scenario.hpp"

namespace rlgl {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The built-in 22-robot reference game: 5 x 35 field, finish line at 25,
// greens every 8 s with the red light 1 s before each green and a final
// interval that stays green, per-robot limits drawn from the seeded
// generator (v_max in [1.5, 2], u_max in [0.2, 0.5], eta in [1, 1.5],
// friction in [0.0141, 0.2368]).
ScenarioConfig reference_scenario(std::uint64_t seed);

// Key = value text with [playground], [schedule], and [robot i] sections.
// Missing keys take the reference-game defaults; robot parameters missing
// from the file are drawn from the seed exactly as reference_scenario does.
// Throws ParseError (with file:line) on syntax problems and ConfigError when
// the parsed scenario fails validate_scenario.
ScenarioConfig parse_scenario(const std::filesystem::path& path);
ScenarioConfig parse_scenario_text(std::string_view text, const std::string& origin);

// Inverse of parse_scenario: parse(write(c)) == c exactly.
std::string write_scenario(const ScenarioConfig& config);
void write_scenario_file(const ScenarioConfig& config, const std::filesystem::path& path);

}  // namespace rlgl
