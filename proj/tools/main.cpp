// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "teamltl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return teamltl::run_cli(args, std::cout, std::cerr);
}
