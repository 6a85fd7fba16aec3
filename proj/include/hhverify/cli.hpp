#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hhv::cli {

enum ExitCode : int {
  kExitPass = 0,
  kExitViolation = 1,
  kExitUsage = 2,
  kExitHypotheses = 3,
};

/// Runs `hhverify <subcommand> [flags...]`; `args` excludes the program
/// name. Reports go to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hhv::cli
