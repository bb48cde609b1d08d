// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "csgsearch/cli.hpp"

int main(int argc, char** argv) {
  return csgsearch::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
