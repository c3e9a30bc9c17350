#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rms {

enum ExitCode { kOk = 0, kRejected = 1, kInvalidInput = 2, kIoError = 3 };

/// Runs one `rms` invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace rms
