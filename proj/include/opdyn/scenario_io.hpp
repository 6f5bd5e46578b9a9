#pragma once

#include <span>
#include <string>
#include <string_view>

#include "opdyn/experiments.hpp"

namespace opdyn {

/// Keys accepted in scenario files, in render order. Every CLI override
/// flag is `--<key>`.
std::span<const std::string_view> scenario_keys();

/// Parses the flat `key = value` scenario format. `#` starts a comment,
/// blank lines are ignored, a repeated key overrides the earlier one.
/// `agents` is required; everything else has a default. `seeds` accepts a
/// comma list (`0,3,7`) or an inclusive range (`0..9`).
///
/// Throws ConfigError carrying the key and line on any invalid entry.
ScenarioConfig parse_scenario_file(std::string_view text);

/// Inverse of parse_scenario_file for configs whose role counts are whole
/// percentages of the population.
std::string render_scenario(const ScenarioConfig& config);

}  // namespace opdyn
