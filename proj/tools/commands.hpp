#pragma once

#include <exception>
#include <string>

#include "run_config.hpp"
#include "table.hpp"

namespace leakywire::cli {

enum ExitCode { kOk = 0, kConfig = 2, kConvergence = 3, kSelftest = 4, kUnexpected = 1 };

// Exit code for an exception escaping a command or a sweep point.
int exit_code_for(const std::exception& e);

CommandResult run_spectrum(const RunConfig& cfg);
CommandResult run_eigenfunction(const RunConfig& cfg);
CommandResult run_resonance(const RunConfig& cfg);
CommandResult run_scatter(const RunConfig& cfg);
CommandResult run_twopoint(const RunConfig& cfg);
CommandResult run_selftest(const RunConfig& cfg);

CommandResult run_command(const std::string& command, const RunConfig& cfg);

}  // namespace leakywire::cli
