// SPDX-License-Identifier: Apache-2.0

#ifndef SECRISK_CLI_HPP
#define SECRISK_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace secrisk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Runs one command. `args` excludes the program name. Data goes to `out`,
// diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secrisk::cli

#endif  // SECRISK_CLI_HPP
