#ifndef LPNORM_TOOLS_CLI_HPP
#define LPNORM_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace lpnorm::cli {

/// Exit codes of run().
inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;

/// Runs one command line (without the program name). The report goes to
/// --out when given, otherwise to out; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpnorm::cli

#endif  // LPNORM_TOOLS_CLI_HPP
