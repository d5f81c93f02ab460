#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sskcrit/ensembles.hpp"

namespace sskcrit::cli {

/// Exit codes: 0 success, 2 usage or parameter error, 3 degenerate instance,
/// 4 numerical failure.
enum ExitCode : int { kOk = 0, kUsage = 2, kDegenerate = 3, kNumeric = 4 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// `diag,offdiag` CSV; the last row has an empty offdiag cell.
std::string ensemble_csv(const SymTridiag& t);

/// Flat `key = value` config text. Blank lines and `#` comments are skipped.
std::map<std::string, std::string> parse_config(const std::string& text);

/// "inf"/"infinity" (any case) or a finite number.
Spike parse_spike(const std::string& text);

}  // namespace sskcrit::cli
