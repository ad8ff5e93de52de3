#pragma once

// Batch subcommands. Each validates its settings before touching the output
// directory, writes CSV/JSON reports there and returns an exit code.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "axiskit/config.hpp"

namespace axiskit {

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,         // a checked property failed
  kExitNumericalFailure = 2,  // quadrature failure, flagged samples, unexpected numerical error
  kExitInvalidConfig = 3,     // validation failed before any work
};

struct CommandContext {
  RunConfig config;
  std::filesystem::path out_dir = "out";
  std::ostream* log = nullptr;  // progress lines; null for silence
};

const std::vector<std::string>& command_names();

int cmd_kernel_scan(const CommandContext& ctx);
int cmd_decay(const CommandContext& ctx);
int cmd_feasibility(const CommandContext& ctx);
int cmd_roundtrip(const CommandContext& ctx);
int cmd_bmo(const CommandContext& ctx);
int cmd_print_config(const CommandContext& ctx, std::ostream& os);

/// Dispatch by name; maps ConfigError to 3 and other toolkit errors to 2,
/// printing the message to `err`.
int run_command(const std::string& name, const CommandContext& ctx, std::ostream& out, std::ostream& err);

}  // namespace axiskit
