#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccset::cli {

/// Runs the command line `args` (without the program name). Exit codes: 0
/// success, 1 failed verification or exhausted reach budget, 2 usage error.
/// Errors are reported on `err` as one line "error<TAB>Kind<TAB>message".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ccset::cli
