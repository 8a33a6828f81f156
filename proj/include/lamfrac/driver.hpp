#pragma once

#include <string>

#include "lamfrac/config.hpp"

namespace lamfrac {

// Executes one CLI command against an output directory. Returns 0 on
// success; numerical failures write <out>/diagnostics.txt and return 2.
// Unknown commands throw ConfigError.
int run_command(const std::string& command, const RunConfig& cfg, const std::string& out_dir,
                unsigned threads);

} // namespace lamfrac
