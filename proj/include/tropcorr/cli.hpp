#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropcorr::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kValidation = 2, kSizeBound = 3 };

/// Runs one command. `args` excludes the program name. Reads the input
/// document from `in` unless --input or --json is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tropcorr::cli
