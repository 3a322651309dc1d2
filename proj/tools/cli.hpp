#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace parakit::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2, kInconclusive = 3, kInternalError = 4 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parakit::cli
