// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace teamltl {

// Exit codes. eval: 0 true, 1 false. mc: 0 holds, 1 refuted,
// 3 holds on the approximation, 4 unknown. check-props: 1 on any
// unexpected failure. 2 is always a usage or input error.
enum ExitCode : int { kExitOk = 0, kExitFalse = 1, kExitError = 2, kExitApprox = 3, kExitUnknown = 4 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace teamltl
