#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tuplecraft::cli {

// Parses args (program name excluded) and runs one subcommand.
// Returns 0 on success, 1 on domain or overflow errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tuplecraft::cli
