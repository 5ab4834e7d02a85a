#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qh {

// exit codes
enum ExitCode { ExitPass = 0, ExitFailure = 1, ExitHypothesis = 2, ExitConfig = 3 };

// JSON report on out (or --out file), human-readable summary on err
// args exclude the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

} // namespace qh
