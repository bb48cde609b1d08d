// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csgsearch {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitExtractionFailed = 1,  // mixed products, unsatisfiable target
  kExitUsage = 2,             // bad flags or unreadable / invalid inputs
};

/// Runs one invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csgsearch
