#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meanslab {

/// Runs one CLI invocation (argv without the program name) against the
/// given streams. Exit codes: 0 completed (hunt: no counterexample),
/// 2 usage or domain error, 3 certified counterexample found and emitted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meanslab
