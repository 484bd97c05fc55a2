#pragma once

#include <string>

#include "pursuit/scenario.hpp"

namespace pursuit {

// Parses the flat key/value scenario format (units encoded in key names,
// arrays in brackets, '#' comments). Throws ParseError with a line number for
// syntax problems or unknown keys, InvalidScenario for semantic ones.
Scenario parse_scenario(const std::string& text);

Scenario load_scenario_file(const std::string& path);

// Canonical text form; parse(serialize(s)) reproduces s exactly (doubles are
// written with 17 significant digits).
std::string serialize_scenario(const Scenario& s);

}  // namespace pursuit
