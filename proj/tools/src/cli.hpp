#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace binident::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { ok = 0, rejected = 1, failure = 2 };

/// Runs `binident <args...>`; args excludes the program name. "-" in a file
/// argument reads from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace binident::cli
