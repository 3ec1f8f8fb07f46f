#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lgsbm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2 };

/// Runs one command line (args excludes the program name). Results that go
/// to "-" are written to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lgsbm::cli
