#ifndef GSEM_CLI_COMMANDS_HPP
#define GSEM_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gsem::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,      ///< parse, validation, precondition, insufficient samples
    kNumericalError = 2,  ///< numerical degeneracy, degenerate design
    kIoError = 3,
    kCheckFailed = 4,     ///< `check` ran but the condition does not hold
};

/// Runs the command line `args` (args[0] is the program name) and returns the
/// exit code. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsem::cli

#endif  // GSEM_CLI_COMMANDS_HPP
