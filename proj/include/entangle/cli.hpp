#ifndef ENTANGLE_CLI_HPP
#define ENTANGLE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace entangle {

// Runs one subcommand. Exit codes: 0 success, 1 check failure, 2 usage error.
// All output goes to `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entangle

#endif
