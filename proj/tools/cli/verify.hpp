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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gpsc::cli {

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Identity, closed-form-versus-dense and analytic-versus-Monte-Carlo checks.
/// `quick` shrinks the fuzz counts and the replication budget.
[[nodiscard]] std::vector<VerifyCheck> run_verification(bool quick, std::uint64_t seed, std::size_t jobs);

} // namespace gpsc::cli
