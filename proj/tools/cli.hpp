#ifndef SPMVSEL_TOOLS_CLI_HPP
#define SPMVSEL_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace spmvsel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spmvsel::cli

#endif  // SPMVSEL_TOOLS_CLI_HPP
