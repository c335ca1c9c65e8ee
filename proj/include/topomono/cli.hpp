#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "topomono/io.hpp"

namespace topomono {

/// Exit codes: 0 valid / feasible / no obstruction, 1 obstructed / invalid,
/// 2 unknown (including exhausted search budgets), 3 usage or input error.
enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUnknown = 2, kExitUsage = 3 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Human-readable rendering of a report; carries the same fields as the JSON.
void render_text(const Json& report, std::ostream& os);

}  // namespace topomono
