// Copyright 2026 The qpurity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPURITY_CLI_H
#define QPURITY_CLI_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qpurity/priors.h"

namespace qpurity::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3, kCapability = 4 };

/// Environment variable naming the directory for relative `--out` paths.
inline constexpr const char *kOutputDirEnv = "QPURITY_OUTPUT_DIR";

/// Bumped whenever a CSV column is added, removed or renamed.
inline constexpr int kCsvSchemaVersion = 1;

/// Parses `hard-sphere`, `bures`, `lambda=<x>` with 0 <= x < 1, or
/// `table=<path>` (two-column CSV of r, w(r)). Throws DomainError.
PriorFamily parse_prior(std::string_view text);

/// RFC-4180 field quoting.
std::string csv_field(std::string_view text);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// 64-bit FNV-1a digest.
std::uint64_t fnv1a64(std::string_view bytes);

/// Runs one subcommand. CSV goes to `--out` or `out`; the manifest line and
/// diagnostics go to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qpurity::cli

#endif
