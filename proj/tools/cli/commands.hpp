#pragma once

#include "config.hpp"
#include "table.hpp"

namespace png::cli {

struct CommandResult {
  Table table;
  bool unconverged = false;   // some numerical result did not meet its tolerance
  bool check_failed = false;  // some row failed its acceptance check
};

// Dispatches on config.command. The config must already be validated.
CommandResult run_command(const RunConfig& config);

}  // namespace png::cli
