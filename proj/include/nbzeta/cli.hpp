// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace nbzeta {

/// Process exit codes.
enum ExitCode : int
{
    kExitOk = 0,
    kExitUsage = 1,
    kExitDomain = 2,
    kExitTolerance = 3,
    kExitIo = 4,
};

/// Environment variable read for the default seed.
inline constexpr const char* kSeedEnvVar = "NBZETA_SEED";

/// Runs the command line in-process; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nbzeta
