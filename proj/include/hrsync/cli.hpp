#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hrsync {

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitUsage = 2,
};

/// Entry point of the `hrsync` tool. `args` excludes the program name.
/// Reports and CSV data go to `out` (and to files under --out); messages go
/// to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hrsync
