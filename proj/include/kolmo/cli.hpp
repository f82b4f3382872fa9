#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kolmo::cli {

/// Dispatch a verb and print a key=value report (or a JSON object with
/// --format json). Exit codes: 0 success, 1 a verification verb found its
/// property false, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kolmo::cli
