// Copyright 2026 The LQAS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/**
 * @file cli.hpp
 * Batch command-line interface: prep, search, finetune, eval, sweep.
 *
 * Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
 */

#include <iosfwd>
#include <string>
#include <vector>

namespace lqas {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumerical = 3;

/// Environment variable consulted when --dataset is not given.
inline constexpr const char *kDatasetRootEnv = "LQAS_DATASET_ROOT";

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Convenience overload; `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace lqas
