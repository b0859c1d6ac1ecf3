// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aqkd::cli {

inline constexpr int kExitAccept = 0;
inline constexpr int kExitReject = 2;
inline constexpr int kExitDecode = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitConfig = 5;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aqkd::cli
