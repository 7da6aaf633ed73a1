#ifndef PRODSPEC_TOOLS_CLI_HPP
#define PRODSPEC_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace prodspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

// args exclude the program name. Reports go to `out` unless --out is given;
// diagnostics go to `err` as a single line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prodspec::cli

#endif  // PRODSPEC_TOOLS_CLI_HPP
