// Command-line front end. Kept in the library so tests can drive it with
// string streams.

#ifndef SYNREORDER_CLI_HPP
#define SYNREORDER_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace synreorder {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// `args` excludes the program name. Input defaults to `in`, output to `out`;
/// diagnostics always go to `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace synreorder

#endif  // SYNREORDER_CLI_HPP
