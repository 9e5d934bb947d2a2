#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace totlab::cli {

// Dispatches one subcommand. args excludes the program name.
// Exit codes: 0 success, 1 invalid input or out-of-range request,
// 2 internal inconsistency (failed theorem verification, broken invariant).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace totlab::cli
