#pragma once

#include "config.hpp"
#include "report.hpp"

#include <string>

namespace cli {

// Names accepted on the command line; "run" dispatches on the config's case.
bool is_command(const std::string& name);

// Runs one command.  Library errors propagate as opc::Error.
Report run_command(const std::string& name, const RunConfig& config);

}  // namespace cli
