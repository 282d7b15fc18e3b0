#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gyration::cli {

/// Process exit codes. Stable API.
enum ExitCode : int {
  kOk = 0,
  kParse = 2,     // scene grammar, consistency, bad command line
  kDomain = 3,    // e.g. isolated vertex with --weighted deg
  kResource = 4,  // exact enumeration above --cap
  kIo = 5,
};

/// Runs the `gyr` command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gyration::cli
