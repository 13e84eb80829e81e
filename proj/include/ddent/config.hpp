#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ddent/kernels.hpp"

namespace ddent {

// Flat `key = value` text. Keys before the first `[curve]` header are
// defaults; each `[curve]` section starts a curve that overrides them. A
// file without sections describes a single curve. `#` starts a comment.
std::vector<ScenarioConfig> parse_config(std::istream& in);
std::vector<ScenarioConfig> parse_config_string(const std::string& text);
std::vector<ScenarioConfig> load_config(const std::string& path);

// Writes one curve back in the same format; parse_config round-trips it.
void write_config(std::ostream& os, const ScenarioConfig& cfg);

}  // namespace ddent
