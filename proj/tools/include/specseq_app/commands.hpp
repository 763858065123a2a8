#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specseq::app {

enum ExitCode : int { exit_pass = 0, exit_findings = 1, exit_usage = 2 };

/// Runs the command line `args` (without the program name). Reports go to
/// `out` (or the --out file), diagnostics to `err` as one JSON object.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specseq::app
