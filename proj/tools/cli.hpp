#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kohmoto::cli {

/// Runs one invocation (args without the program name). Returns the exit status:
/// 0 ok, 1 internal error, 2 precondition violation, 3 precision failure, 4 unsupported regime.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kohmoto::cli
