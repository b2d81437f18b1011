#ifndef SPLINEDFT_TOOLS_CLI_HPP
#define SPLINEDFT_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace splinedft::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,     // bad flags, malformed input, invalid configuration
    kParity = 3,    // theta and N both even, or method2 with even N
    kSingular = 4,  // singular boundary system or matrix
    kIo = 5,        // unreadable input or unwritable output
    kSelftestFailed = 6,
};

/// Runs the tool with args (program name excluded). Informational output goes
/// to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splinedft::cli

#endif  // SPLINEDFT_TOOLS_CLI_HPP
