#pragma once

#include <string>

#include "pudq/run_config.hpp"

namespace pudq {

// Exit-code contract: 0 success, 1 verification failure, 2 usage/config error.
struct CommandResult {
  int exit_code = 0;
  std::string payload;      // complete file contents; written only on success
  std::string diagnostics;  // human-readable status for stderr
};

CommandResult cmd_spectrum(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_grid(const RunConfig& cfg);
CommandResult cmd_transform(const RunConfig& cfg);

// Writes payload to cfg.output (or returns it for stdout); never leaves a
// partial file behind.
int deliver(const CommandResult& r, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace pudq
