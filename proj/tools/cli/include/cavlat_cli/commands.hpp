#pragma once

#include <ostream>

#include "cavlat_cli/config.hpp"

namespace cavlat::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitValidation = 2,
  kExitTolerance = 3,
  kExitRange = 4,
};

/// Runs config.command. Results go to config.output (or `out` when empty),
/// diagnostics to `err`. Never throws; failures map to an ExitCode.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cavlat::cli
