#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rosserlog::cli {

// Runs one command-line invocation. Exit codes: 0 provable / success /
// true, 1 unprovable / false, 2 error, 3 unresolved within budget.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rosserlog::cli
