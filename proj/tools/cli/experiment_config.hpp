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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "gpsc/analysis.hpp"

namespace gpsc::cli {

/// Parsed `experiment` config. `source` keeps the flat keys for hashing.
struct ExperimentConfig {
    std::string name;
    SweepConfig sweep;
    FlatConfig source;
};

/// Parsed `calibration` config.
struct CalibrationSetup {
    std::string name;
    CalibrationConfig calibration;
    FlatConfig source;
};

[[nodiscard]] PartitionKind parse_partition_kind(const std::string &name);
[[nodiscard]] std::string to_string(PartitionKind kind);

/// Reads GPSC_SEED; throws std::invalid_argument when set but malformed.
[[nodiscard]] std::optional<std::uint64_t> seed_from_environment();

/// Builds the sweep; `seed_override` replaces the `seed` key before hashing.
[[nodiscard]] ExperimentConfig experiment_from_config(FlatConfig cfg, std::optional<std::uint64_t> seed_override);
[[nodiscard]] CalibrationSetup calibration_from_config(FlatConfig cfg, std::optional<std::uint64_t> seed_override);

} // namespace gpsc::cli
