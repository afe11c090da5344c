// Scenario configuration files: one `key = value` per line, '#' starts a
// comment, blank lines ignored. Unset keys keep their defaults. List values
// (radio_ranges) are comma separated.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sfv/simulator.hpp"

namespace sfv {

/// Throws ConfigError with the offending line number on malformed input,
/// unknown keys, or a scenario that fails validation.
Scenario parse_scenario_config(std::string_view text, Scenario base = {});
Scenario load_scenario_config(const std::filesystem::path& path, Scenario base = {});

/// Renders every recognised key; parsing the result reproduces `sc`.
std::string format_scenario_config(const Scenario& sc);

std::vector<std::string> scenario_config_keys();

/// Comma separated numbers, e.g. "200,400,600".
std::vector<double> parse_number_list(std::string_view text);

}  // namespace sfv
