#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eph::cli {

enum ExitCode : int { Ok = 0, VerificationFailed = 1, UsageError = 2, DomainError = 3 };

/// Runs the `eph` command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Raster threads: hardware concurrency capped by EPH_THREADS when set.
unsigned default_threads();

}  // namespace eph::cli
