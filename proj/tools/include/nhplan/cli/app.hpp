#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nhplan/search.hpp"

namespace nhplan::cli {

enum ExitCode : int {
  kExitFound = 0,
  kExitConfigError = 1,
  kExitUnreachable = 2,
  kExitBudget = 3,
};

int exit_code_for(PlanStatus status);

/// `status=<s> cost=<c> expansions=<n> reverse_step_count=<r> wall_ms=<t>`.
/// Cost is printed in shortest round-trip form, or `inf` without a path.
std::string summary_line(const PlanResult& result, double wall_ms);

/// Runs the command line. `args` excludes the program name. Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nhplan::cli
