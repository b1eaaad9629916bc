#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace banditlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvariant = 1,
  kExitConfig = 2,
  kExitIo = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Errors are reported on `err` and mapped onto exit codes:
/// configuration 2, IO 3, invariant violations 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace banditlab::cli
