/*
 * Copyright 2026 The gpsc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gpsc::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitInvalidArgs = 2,
    kExitNumerical = 3,
    kExitVerification = 4,
};

/// Runs the `gpsc` command line. `args` excludes the program name.
[[nodiscard]] int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace gpsc::cli
