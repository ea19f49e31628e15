#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairtile::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kGenerationFailed = 3 };

// Entry point shared by the executable and the tests. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairtile::cli
