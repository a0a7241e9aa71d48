#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rotelt {

/// Exit statuses of the command-line tool.
enum ExitStatus : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitSpecInvalid = 2,
  kExitHypothesis = 3,
  kExitResource = 4,
};

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace rotelt
